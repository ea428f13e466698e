import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fcakit as f
from fcakit import Context, FcaError, FormatError, ManyValuedContext
from fcakit.bitset import to_frozenset

from conftest import shapes, grid, oracle_concepts, random_context


def attrs(ctx, names):
    return ctx.attribute_indices(names)


class TestDerivation:
    def test_example_rows(self, shapes):
        assert shapes.attribute_names(shapes.derive_objects([0, 1])) == ("a",)
        assert shapes.attribute_names(shapes.derive_objects([3])) == ("b", "c", "d")

    def test_empty_set_derives_everything(self, shapes):
        assert shapes.derive_objects([]) == frozenset(range(4))
        assert shapes.derive_attributes([]) == frozenset(range(4))

    def test_closures_of_small_sets(self, shapes):
        assert shapes.close_attributes(attrs(shapes, "b")) == attrs(shapes, "bc")
        assert shapes.close_attributes(attrs(shapes, "cd")) == attrs(shapes, "bcd")
        assert shapes.close_attributes(attrs(shapes, "ac")) == attrs(shapes, "ac")

    def test_out_of_range(self, shapes):
        with pytest.raises(FcaError):
            shapes.derive_attributes([9])

    def test_empty_context_dimensions(self):
        ctx = Context((), ("a", "b"), ())
        assert ctx.derive_attributes([0]) == frozenset()
        assert ctx.close_attributes([]) == frozenset({0, 1})

    def test_degenerate_contexts_are_legal(self):
        import fcakit as f
        zero_g = Context((), ("a", "b"), ())
        zero_m = Context(("x", "y"), (), (0, 0))
        both = Context((), (), ())
        for ctx in (zero_g, zero_m, both):
            assert f.read_burmeister(f.write_burmeister(ctx)) == ctx
            concepts = f.enumerate_concepts(ctx)
            assert len(concepts) == 1
            assert f.concept_covering_relation(ctx, concepts) == []
        assert [(sorted(i.premise), sorted(i.conclusion))
                for i in f.duquenne_guigues(zero_g)] == [([], [0, 1])]
        assert len(f.duquenne_guigues(zero_m)) == 0

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_galois_condition(self, data):
        ng = data.draw(st.integers(1, 5))
        nm = data.draw(st.integers(1, 5))
        rows = data.draw(st.lists(st.integers(0, 2 ** nm - 1), min_size=ng, max_size=ng))
        ctx = Context(tuple(f"g{i}" for i in range(ng)), tuple(f"m{j}" for j in range(nm)),
                      tuple(rows))
        a = data.draw(st.integers(0, 2 ** ng - 1))
        b = data.draw(st.integers(0, 2 ** nm - 1))
        A, B = to_frozenset(a), to_frozenset(b)
        left = A <= ctx.derive_attributes(B)
        mid = B <= ctx.derive_objects(A)
        rect = all(ctx.incidence(g, m) for g in A for m in B)
        assert left == mid == rect

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_prime_laws(self, data):
        ng = data.draw(st.integers(1, 5))
        nm = data.draw(st.integers(1, 5))
        rows = data.draw(st.lists(st.integers(0, 2 ** nm - 1), min_size=ng, max_size=ng))
        ctx = Context(tuple(f"g{i}" for i in range(ng)), tuple(f"m{j}" for j in range(nm)),
                      tuple(rows))
        a1 = to_frozenset(data.draw(st.integers(0, 2 ** ng - 1)))
        a2 = to_frozenset(data.draw(st.integers(0, 2 ** ng - 1)))
        # A''' = A'
        assert ctx.derive_objects(ctx.close_objects(a1)) == ctx.derive_objects(a1)
        # (A1 u A2)' = A1' n A2'
        assert ctx.derive_objects(a1 | a2) == ctx.derive_objects(a1) & ctx.derive_objects(a2)
        # extensivity and monotonicity of closure
        assert a1 <= ctx.close_objects(a1)
        if a1 <= a2:
            assert ctx.close_objects(a1) <= ctx.close_objects(a2)


class TestClarifyReduce:
    def test_duplicate_row_merged(self, shapes):
        ctx = Context(("1", "2", "3", "4", "5"), shapes.attributes, shapes.rows + (shapes.rows[1],))
        out, obj_merge, _ = f.clarify(ctx)
        assert out.objects == ("1", "2", "3", "4")
        assert obj_merge[1] == (1, 4)

    def test_already_clarified_unchanged(self, shapes):
        out, obj_merge, attr_merge = f.clarify(shapes)
        assert out.rows == shapes.rows
        assert all(len(v) == 1 for v in obj_merge.values())
        assert all(len(v) == 1 for v in attr_merge.values())

    def test_all_ones_collapses(self):
        ctx = Context.from_table(("x", "y"), ("p", "q"), [[1, 1], [1, 1]])
        out, _, _ = f.clarify(ctx)
        assert out.n_objects == 1 and out.n_attributes == 1

    def test_reducible_intersection_column(self):
        # last column is the intersection of the first two
        ctx = Context.from_table(
            ("g1", "g2", "g3", "g4"), ("mi", "mj", "mk"),
            [[1, 0, 0], [1, 1, 1], [1, 1, 1], [0, 0, 0]])
        out, removed = f.reduce_attributes(ctx)
        assert "mk" in removed
        assert "mi" in out.attributes and "mj" in out.attributes

    def test_full_column_removed(self):
        ctx = Context.from_table(("x", "y"), ("full", "other"), [[1, 0], [1, 1]])
        out, removed = f.reduce_attributes(ctx)
        assert removed == ("full",)

    def test_shapes_context_is_irreducible_both_ways(self, shapes):
        out, removed = f.reduce_attributes(shapes)
        assert removed == () and out.rows == shapes.rows
        out, removed = f.reduce_objects(shapes)
        assert removed == () and out.rows == shapes.rows

    def test_lattice_preserved_up_to_isomorphism(self, shapes):
        rng = random.Random(0)
        fixtures = [
            shapes,
            Context(("1", "2", "3", "4", "5"), shapes.attributes, shapes.rows + (shapes.rows[0],)),
            Context.from_table(("x", "y"), ("p", "q"), [[1, 1], [1, 1]]),
        ]
        fixtures += [random_context(rng, 5, 5) for _ in range(10)]
        for ctx in fixtures:
            for op in (lambda c: f.clarify(c)[0], lambda c: f.reduce_attributes(c)[0]):
                reduced = op(ctx)
                kept_g = frozenset(ctx.objects.index(g) for g in reduced.objects)
                kept_m = frozenset(ctx.attributes.index(m) for m in reduced.attributes)
                g_map = {ctx.objects.index(g): i for i, g in enumerate(reduced.objects)}
                m_map = {ctx.attributes.index(m): i for i, m in enumerate(reduced.attributes)}
                original = oracle_concepts(ctx)
                target = oracle_concepts(reduced)
                mapped = {(frozenset(g_map[g] for g in ext & kept_g),
                           frozenset(m_map[m] for m in intt & kept_m))
                          for ext, intt in original}
                assert mapped == target
                assert len(mapped) == len(original)
                # order preserved: extent containment survives the map
                originals = sorted(original, key=lambda p: sorted(p[0]))
                for e1, _ in originals:
                    for e2, _ in originals:
                        m1 = frozenset(g_map[g] for g in e1 & kept_g)
                        m2 = frozenset(g_map[g] for g in e2 & kept_g)
                        assert (e1 <= e2) == (m1 <= m2)


class TestSorting:
    def test_shapes_object_sort_is_stable(self, shapes):
        out, perm = f.sort_by_cardinality(shapes, "objects")
        assert perm == (0, 1, 2, 3)
        assert out.objects == shapes.objects

    def test_sorted_input_identity(self):
        ctx = Context.from_table(("x", "y"), ("p", "q"), [[1, 0], [1, 1]])
        _, perm = f.sort_by_cardinality(ctx, "objects")
        assert perm == (0, 1)

    def test_descending_reverses_untied(self):
        ctx = Context.from_table(("x", "y", "z"), ("p", "q"), [[1, 0], [1, 1], [0, 0]])
        _, up = f.sort_by_cardinality(ctx, "objects")
        _, down = f.sort_by_cardinality(ctx, "objects", descending=True)
        assert up == (2, 0, 1) and down == (1, 0, 2)

    def test_attribute_axis(self, shapes):
        out, perm = f.sort_by_cardinality(shapes, "attributes")
        sizes = [len(out.derive_attributes([m])) for m in range(out.n_attributes)]
        assert sizes == sorted(sizes)
        # sorting permutes columns only; concepts are renamed, not changed
        assert len(oracle_concepts(out)) == len(oracle_concepts(shapes))


class TestScaling:
    def test_nominal_partitions(self):
        mv = ManyValuedContext(("x", "y", "z"), ("m",), (("1",), ("2",), ("1",)))
        ctx = f.scale(mv, "nominal")
        assert ctx.attributes == ("m=1", "m=2")
        for g in range(3):
            assert len(ctx.derive_objects([g])) == 1

    def test_interordinal_hits(self):
        mv = ManyValuedContext(("x", "y"), ("m",), (("1",), ("2",)))
        ctx = f.scale(mv, "interordinal")
        assert ctx.n_attributes == 4
        x_attrs = set(ctx.attribute_names(ctx.derive_objects([0])))
        assert x_attrs == {"m<=1", "m<=2", "m>=1"}

    def test_attribute_counts(self):
        rng = random.Random(1)
        for _ in range(10):
            ng = rng.randint(1, 5)
            nm = rng.randint(1, 3)
            values = tuple(tuple(str(rng.randint(0, 3)) for _ in range(nm)) for _ in range(ng))
            mv = ManyValuedContext(tuple(f"g{i}" for i in range(ng)),
                                   tuple(f"m{j}" for j in range(nm)), values)
            total = sum(len(mv.observed_values(m)) for m in range(nm))
            assert f.scale(mv, "nominal").n_attributes == total
            assert f.scale(mv, "interordinal").n_attributes == 2 * total

    def test_unknown_method(self):
        mv = ManyValuedContext(("x",), ("m",), (("1",),))
        with pytest.raises(FcaError):
            f.scale(mv, "ordinal")


class TestFunctionalDependencies:
    def test_constant_column_full_in_kn(self):
        mv = ManyValuedContext(("x", "y", "z"), ("m", "n"),
                               (("1", "a"), ("1", "b"), ("1", "c")))
        kn = f.build_kn(mv)
        m_col = kn.derive_attributes([0])
        assert m_col == frozenset(range(3))
        assert kn.derive_attributes([1]) == frozenset()

    def test_kn_needs_two_objects(self):
        with pytest.raises(FcaError):
            f.build_kn(ManyValuedContext(("x",), ("m",), (("1",),)))

    def test_fd_equals_implication_in_kn(self):
        rng = random.Random(2)
        for _ in range(10):
            ng, nm = rng.randint(2, 5), rng.randint(1, 4)
            values = tuple(tuple(str(rng.randint(0, 2)) for _ in range(nm)) for _ in range(ng))
            mv = ManyValuedContext(tuple(f"g{i}" for i in range(ng)),
                                   tuple(f"m{j}" for j in range(nm)), values)
            kn = f.build_kn(mv)
            for xs in range(1 << nm):
                for ys in range(1 << nm):
                    X, Y = to_frozenset(xs), to_frozenset(ys)
                    assert (f.functional_dependency_holds(mv, X, Y)
                            == f.is_valid(kn, f.make_implication(X, Y)))

    def test_kw_matches_example_table(self, grid):
        kw = f.build_kw(grid)
        assert kw.objects == ("0", "1", "2", "3", "4")
        assert kw.values == (
            ("0", "0", "0", "0"),
            ("0", "0", "1", "1"),
            ("0", "2", "0", "2"),
            ("3", "0", "3", "0"),
            ("0", "4", "0", "4"))

    def test_implications_equal_fds_of_kw(self, shapes):
        kw = f.build_kw(shapes)
        for xs in range(16):
            for ys in range(16):
                X, Y = to_frozenset(xs), to_frozenset(ys)
                assert (f.is_valid(shapes, f.make_implication(X, Y))
                        == f.functional_dependency_holds(kw, X, Y))

    def test_dropping_row0_breaks_the_bridge(self, grid):
        kw0 = f.build_kw(grid, include_row0=False)
        mismatches = 0
        for xs in range(16):
            for ys in range(16):
                X, Y = to_frozenset(xs), to_frozenset(ys)
                if (f.is_valid(grid, f.make_implication(X, Y))
                        != f.functional_dependency_holds(kw0, X, Y)):
                    mismatches += 1
        assert mismatches > 0

    def test_kw_rejects_reserved_object_name(self):
        ctx = Context.from_table(("0", "y"), ("p", "q"), [[1, 0], [0, 1]])
        with pytest.raises(FcaError):
            f.build_kw(ctx)  # the shared row needs the name "0"

    def test_empty_relation_context(self):
        ctx = Context.from_table(("x", "y"), ("p", "q"), [[0, 0], [0, 0]])
        kw = f.build_kw(ctx)
        for xs in range(4):
            for ys in range(4):
                X, Y = to_frozenset(xs), to_frozenset(ys)
                assert (f.is_valid(ctx, f.make_implication(X, Y))
                        == f.functional_dependency_holds(kw, X, Y))


class TestFormats:
    def test_burmeister_round_trip(self, shapes):
        assert f.read_burmeister(f.write_burmeister(shapes)) == shapes

    def test_burmeister_rejects_bad_cell(self):
        text = "B\n\n1\n1\n\ng\nm\n?\n"
        with pytest.raises(FormatError):
            f.read_burmeister(text)

    def test_burmeister_rejects_missing_header(self):
        with pytest.raises(FormatError):
            f.read_burmeister("1\n1\ng\nm\nX\n")

    def test_csv_round_trip(self, shapes):
        assert f.read_csv_context(f.write_csv_context(shapes)) == shapes

    def test_csv_bad_binary_cell(self):
        with pytest.raises(FormatError):
            f.read_csv_context(",a\nx,5\n")

    def test_many_valued_csv(self):
        mv = f.read_csv_many_valued(",m,n\nx,1,a\ny,2,b\n")
        assert mv.values == (("1", "a"), ("2", "b"))

    def test_duplicate_names_rejected(self):
        with pytest.raises(FcaError):
            Context(("x", "x"), ("m",), (0, 0))
        with pytest.raises(FcaError):
            Context(("x",), ("m", "m"), (0,))
