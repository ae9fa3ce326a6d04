import itertools
from fractions import Fraction as F

import pytest

from subgadgets.supports import (FiniteDistribution, SupportFamily,
                                 build_asymmetric_support, build_symmetric_support,
                                 coordinate_subsets, distance_multiset,
                                 orbit_partition, verify_pairwise_independent)


def xor_image_oracle(l, subs):
    """Independent enumeration of the construction, straight from its definition."""
    pts = set()
    for bits in itertools.product((0, 1), repeat=l):
        x = 0
        for pos, T in enumerate(subs):
            if sum(bits[i] for i in T) % 2:
                x |= 1 << pos
        pts.add(x)
    return pts


def test_asymmetric_l2_is_the_three_weight2_strings():
    fam = build_asymmetric_support(2)
    assert fam.k == 3
    oracle = xor_image_oracle(2, coordinate_subsets(2, odd_only=False))
    assert set(fam.points) == oracle - {0}
    assert all(p.bit_count() == 2 for p in fam.points)
    assert len(fam.points) == 3


def test_asymmetric_l3_weights():
    fam = build_asymmetric_support(3)
    assert fam.k == 7 and len(fam.points) == 7
    assert all(p.bit_count() == 4 for p in fam.points)


def test_asymmetric_l4_pairwise_distances():
    fam = build_asymmetric_support(4)
    assert fam.k == 15 and len(fam.points) == 15
    assert all(p.bit_count() == 8 for p in fam.points)
    for a, b in itertools.combinations(fam.points, 2):
        assert (a ^ b).bit_count() == 8


def test_asymmetric_mu_keeps_the_zero_atom():
    fam = build_asymmetric_support(3)
    assert fam.mu.probability(0) == F(1, 8)
    assert 0 not in fam.points


def test_symmetric_l3_from_oracle():
    fam = build_symmetric_support(3)
    assert fam.k == 4
    oracle = xor_image_oracle(3, coordinate_subsets(3, odd_only=True))
    assert set(fam.points) == oracle - {0, 15}
    assert len(fam.points) == 6
    assert all(p.bit_count() == 2 for p in fam.points)
    assert fam.closed_under_complement()


def test_symmetric_l4_and_l5_sizes():
    fam4 = build_symmetric_support(4)
    assert fam4.k == 8 and len(fam4.points) == 14
    fam5 = build_symmetric_support(5)
    assert fam5.k == 16 and len(fam5.points) == 30
    assert all(p.bit_count() == 8 for p in fam5.points)


def test_symmetric_mu_keeps_zero_and_full_atoms():
    fam = build_symmetric_support(4)
    assert fam.mu.probability(0) == F(1, 16)
    assert fam.mu.probability((1 << 8) - 1) == F(1, 16)


def test_builders_reject_out_of_range():
    with pytest.raises(ValueError):
        build_asymmetric_support(1)
    with pytest.raises(ValueError):
        build_asymmetric_support(5)
    with pytest.raises(ValueError):
        build_symmetric_support(6)


def odd_parity_distribution():
    atoms = tuple((x, F(1, 4)) for x in range(8) if x.bit_count() % 2 == 1)
    return FiniteDistribution(3, atoms)


def test_pairwise_independence_examples():
    assert verify_pairwise_independent(odd_parity_distribution())
    assert verify_pairwise_independent(build_asymmetric_support(3).mu)
    two_point = FiniteDistribution(3, ((0, F(1, 2)), (7, F(1, 2))))
    assert not verify_pairwise_independent(two_point)


@pytest.mark.parametrize("build,l", [(build_asymmetric_support, 2),
                                     (build_asymmetric_support, 3),
                                     (build_asymmetric_support, 4),
                                     (build_symmetric_support, 2),
                                     (build_symmetric_support, 3),
                                     (build_symmetric_support, 4),
                                     (build_symmetric_support, 5)])
def test_every_generated_distribution_is_pairwise_independent(build, l):
    assert verify_pairwise_independent(build(l).mu)


def test_distance_multiset_examples():
    fam = build_asymmetric_support(4)
    assert distance_multiset(0, fam).distances == (8,) * 15
    codeword = fam.points[0]
    assert distance_multiset(codeword, fam).distances == (0,) + (8,) * 14
    assert distance_multiset(1, fam).distances == (7,) * 8 + (9,) * 7
    assert distance_multiset(1, fam).compact() == "7^8 9^7"


def test_orbit_partition_c4_matches_the_46_classes():
    fam = build_asymmetric_support(4)
    part = orbit_partition(fam, "plain")
    assert part.n_orbits == 46
    assert sum(part.sizes) == 1 << 15
    by_key = {}
    for o in range(46):
        rep = part.representatives[o]
        by_key[(rep.bit_count(), distance_multiset(rep, fam).compact())] = part.sizes[o]
    assert by_key[(3, "5^2 7^6 9^6 11^1")] == 420
    assert by_key[(3, "7^12 11^3")] == 35


def test_orbit_sizes_partition_the_cube():
    for fam, mode in [(build_symmetric_support(3), "complement-closed"),
                      (build_asymmetric_support(2), "plain")]:
        part = orbit_partition(fam, mode)
        assert sum(part.sizes) == 1 << fam.k
        assert sorted(set(part.orbit_of)) == list(range(part.n_orbits))


def test_complement_closed_orbits_merge_complements():
    fam = build_symmetric_support(4)
    part = orbit_partition(fam, "complement-closed")
    full = (1 << 8) - 1
    assert all(part.orbit_of[x] == part.orbit_of[x ^ full] for x in range(1 << 8))


def test_error_count_distance_relation_for_k16():
    # d(S, support) = 8 - |S| + 2 e(S) for all |S| <= 8
    fam = build_symmetric_support(5)
    for x in range(1 << 16):
        w = x.bit_count()
        if w > 8:
            continue
        d = min(distance_multiset(x, fam).distances)
        e = min((x & ~c).bit_count() for c in fam.points)
        assert d == 8 - w + 2 * e


def support_preserving_permutations(fam, limit=10):
    """Brute-force coordinate permutations mapping the support to itself."""
    found = []
    pts = set(fam.points)
    for perm in itertools.permutations(range(fam.k)):
        mapped = set()
        for p in pts:
            q = 0
            for i in range(fam.k):
                if p & (1 << i):
                    q |= 1 << perm[i]
            mapped.add(q)
        if mapped == pts:
            found.append(perm)
            if len(found) == limit:
                break
    return found


def test_orbit_key_invariant_under_support_automorphisms():
    for fam in (build_asymmetric_support(2), build_symmetric_support(3)):
        part = orbit_partition(fam, "plain")
        perms = support_preserving_permutations(fam)
        assert perms
        for perm in perms:
            for x in range(1 << fam.k):
                y = 0
                for i in range(fam.k):
                    if x & (1 << i):
                        y |= 1 << perm[i]
                assert part.orbit_of[x] == part.orbit_of[y]


def test_orbit_partition_rejects_bad_modes():
    fam = build_asymmetric_support(2)
    with pytest.raises(ValueError):
        orbit_partition(fam, "weird")
    with pytest.raises(ValueError):
        orbit_partition(fam, "complement-closed")  # not complement-closed


def test_family_json_roundtrip():
    fam = build_symmetric_support(3)
    again = SupportFamily.from_json_dict(fam.to_json_dict())
    assert again == fam


def test_distribution_validation():
    with pytest.raises(ValueError):
        FiniteDistribution(2, ((0, F(1, 2)), (1, F(1, 4))))  # does not sum to 1
    with pytest.raises(ValueError):
        FiniteDistribution(2, ((1, F(1, 2)), (0, F(1, 2))))  # unsorted
    with pytest.raises(ValueError):
        FiniteDistribution(2, ((0, F(0)), (1, F(1))))  # zero atom
