"""Glue codes, the 23 non-trivial rank-24 even unimodular lattices, and
the marking pipeline on the 24A_1 lattice."""

import pytest

from evenlat.rootsys import RootSystemType, parse_type
from evenlat.niemeier import (ROOT_TYPES, build_niemeier, verify_niemeier,
                              coinvariant_lattice, marking_pipeline,
                              golay_binary, golay_ternary, golay_octads,
                              golay_involutions)


class TestBinaryGolay:
    def test_size_and_weights(self):
        words = golay_binary()
        assert len(words) == 4096
        weights = {}
        for w in words:
            weights[sum(w)] = weights.get(sum(w), 0) + 1
        # weight enumerator of the extended binary code of length 24
        assert weights == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}

    def test_linear(self):
        words = set(golay_binary())
        sample = sorted(words)[:40]
        for a in sample:
            for b in sample:
                assert tuple(x ^ y for x, y in zip(a, b)) in words

    def test_octads(self):
        octads = golay_octads()
        assert len(octads) == 759
        assert all(len(o) == 8 for o in octads)

    def test_five_transitive_design(self):
        # every 5-set of coordinates lies in exactly one octad
        octads = golay_octads()
        import itertools
        seen = {}
        for o in octads:
            for five in itertools.combinations(sorted(o), 5):
                assert five not in seen
                seen[five] = o
        import math
        assert len(seen) == math.comb(24, 5)


class TestTernaryGolay:
    def test_size_and_min_weight(self):
        words = golay_ternary()
        assert len(words) == 729
        wmin = min(sum(1 for x in w if x) for w in words if any(w))
        assert wmin == 6

    def test_self_orthogonal(self):
        words = sorted(golay_ternary())[:30]
        for a in words:
            for b in words:
                assert sum(x * y for x, y in zip(a, b)) % 3 == 0


class TestNiemeierLattices:
    def test_root_types_table(self):
        assert len(ROOT_TYPES) == 23
        assert ROOT_TYPES[23] == (("A", 1),) * 24
        assert ROOT_TYPES[22] == (("A", 2),) * 12
        assert ROOT_TYPES[1] == (("D", 24),)
        assert ROOT_TYPES[2] == (("D", 16), ("E", 8))
        assert ROOT_TYPES[3] == (("E", 8),) * 3
        total_ranks = {j: sum(n for _, n in ROOT_TYPES[j])
                       for j in ROOT_TYPES}
        assert set(total_ranks.values()) == {24}

    @pytest.mark.parametrize("j", [1, 5, 11, 19, 22, 23])
    def test_build_and_verify(self, j):
        N = build_niemeier(j)
        report = verify_niemeier(N.lattice)
        assert report["ok"]
        assert abs(report["det"]) == 1
        expected = RootSystemType(ROOT_TYPES[j])
        assert report["root_type"] == str(expected)
        assert report["root_count"] == expected.root_count()

    def test_even_negative_definite(self):
        N = build_niemeier(23)
        L = N.lattice
        assert L.rank == 24
        assert L.is_even
        assert L.signature() == (0, 24)

    def test_bad_index(self):
        with pytest.raises(Exception):
            build_niemeier(0)
        with pytest.raises(Exception):
            build_niemeier(24)


class TestInvolutionsAndMarking:
    def test_involution_cycle_type(self):
        invs = golay_involutions(limit=1)
        assert len(invs) == 1
        perm = invs[0]
        fixed = [i for i in range(24) if perm[i] == i]
        assert len(fixed) == 8
        assert all(perm[perm[i]] == i for i in range(24))
        # the fixed set is an octad
        assert frozenset(fixed) in set(golay_octads())
        # the involution preserves the code
        words = set(golay_binary())
        for w in sorted(words)[:200]:
            img = [0] * 24
            for i in range(24):
                img[perm[i]] = w[i]
            assert tuple(img) in words

    def _orbits(self, perm):
        orbits = []
        seen = set()
        for i in range(24):
            if i in seen:
                continue
            orbit = [i] if perm[i] == i else sorted((i, perm[i]))
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def test_involution_coinvariant(self):
        from evenlat.fqf_genus import (genus_symbol, parse_symbol,
                                       fqf_equivalent)
        perm = golay_involutions(limit=1)[0]
        N = build_niemeier(23)
        co = coinvariant_lattice(N, self._orbits(perm))
        assert co.rank == 8
        want, _ = parse_symbol("2_{II}^{+8}")
        assert fqf_equivalent(genus_symbol(co.as_lattice()).qsymbol(), want)

    def test_marking_pipeline_consistency(self):
        perm = golay_involutions(limit=1)[0]
        orbits = self._orbits(perm)
        N = build_niemeier(23)
        alpha = next(o[0] for o in orbits if len(o) == 1)
        res = marking_pipeline(N, orbits, alpha)
        # rank bookkeeping: S = coinvariant + one root, complement fills up
        assert res.S.rank == res.coinvariant.rank + 1
        assert res.S.rank + res.complement.rank == 24
        assert res.coinvariant_rootfree
        d = res.as_dict()
        assert d["S_rank"] == 9
        assert d["complement_rank"] == 15

    def test_orbit_validation(self):
        N = build_niemeier(23)
        with pytest.raises(ValueError):
            coinvariant_lattice(N, [[0, 1]])  # does not cover 0..23
        bad = [[i] for i in range(23)] + [[23, 23]]
        with pytest.raises(ValueError):
            coinvariant_lattice(N, bad)

    def test_alpha_range(self):
        N = build_niemeier(23)
        orbits = [[i] for i in range(24)]
        with pytest.raises(ValueError):
            marking_pipeline(N, orbits, 24)
