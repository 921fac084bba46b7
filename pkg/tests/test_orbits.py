import pytest
from hypothesis import given, settings, strategies as st

from nilterm.errors import (ChainMismatch, InvalidBlock, ParityViolation, PreconditionViolated,
                            SumMismatch, UnsupportedFamily, VeryEvenUnsupported)
from nilterm.orbits import (OrbitId, Partition, b3_cover_degree, brute_collapse, check_chain,
                            classify_induction, core_case, dominates, gl_merge, induce,
                            is_rather_odd, partitions_of, pi1_order, satisfies_parity,
                            type_ii_witness, un_induce, validate_orbit, x_collapse)


def P(*parts):
    return Partition(parts)


# ---------------------------------------------------------------- partitions

def test_partition_normalises():
    p = Partition((1, 3, 0, 3))
    assert p.parts == (3, 3, 1) and p.size == 7 and p.r(3) == 2 and p.r(2) == 0
    assert str(p) == "[3^2,1]"
    assert P(4, 2, 1).transpose() == P(3, 2, 1, 1)
    assert Partition.zero(3) == P(1, 1, 1)


def test_partition_rejects_negative():
    with pytest.raises(InvalidBlock):
        Partition((2, -1))


# ---------------------------------------------------------------- validation

def test_validate_examples():
    assert validate_orbit(OrbitId("sp", 20, P(6, 6, 4, 4)))
    assert validate_orbit(OrbitId("soD", 40, P(11, 11, 11, 3, 3, 1)))


@pytest.mark.parametrize("orbit,err", [
    (OrbitId("sp", 6, P(3, 2, 1)), ParityViolation),
    (OrbitId("soB", 7, P(4, 2, 1)), ParityViolation),
    (OrbitId("sp", 10, P(6, 2)), SumMismatch),
    (OrbitId("sp", 7, P(5, 1, 1)), SumMismatch),
    (OrbitId("soB", 8, P(5, 3)), SumMismatch),
    (OrbitId("soD", 8, P(4, 4)), VeryEvenUnsupported),
])
def test_validate_errors(orbit, err):
    with pytest.raises(err):
        validate_orbit(orbit)


def test_letters_map_to_orbit_families():
    assert OrbitId("C", 4, P(2, 2)).family == "sp"
    assert OrbitId("B", 3, P(3)).family == "soB"
    with pytest.raises(UnsupportedFamily):
        OrbitId("G", 2, P(2))


# ---------------------------------------------------------------- collapse

def test_collapse_examples():
    assert x_collapse("sp", P(3, 3, 3, 1)) == P(3, 3, 2, 2)
    assert x_collapse("sp", P(5, 3, 2, 2)) == P(4, 4, 2, 2)
    assert x_collapse("soD", P(5, 3, 1, 1)) == P(5, 3, 1, 1)
    assert x_collapse("sl", P(3, 1)) == P(3, 1)


@pytest.mark.parametrize("family", ["soB", "sp", "soD"])
@pytest.mark.parametrize("n", range(1, 13))
def test_collapse_matches_oracle(family, n):
    if family == "sp" and n % 2:
        with pytest.raises(SumMismatch):
            x_collapse(family, Partition.zero(n))
        return
    for q in partitions_of(n):
        p = Partition(q)
        c = x_collapse(family, p)
        assert c == brute_collapse(family, p), p
        assert satisfies_parity(family, c) and dominates(p, c)


def test_partitions_of_counts():
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


# ---------------------------------------------------------------- induction

def test_induce_examples():
    assert induce("sp", P(1, 1, 1, 1), 3) == P(3, 3, 2, 2)
    assert induce("sp", P(3, 3, 2, 2), 1) == P(4, 4, 2, 2)
    assert induce("sp", P(4, 4, 2, 2), 4) == P(6, 6, 4, 4)
    assert induce("soD", P(3, 3, 3, 2, 2, 1), 4) == P(5, 5, 5, 3, 3, 1)


def test_induce_from_empty_and_nonzero_q():
    assert induce("sp", P(), 2) == P(2, 2)
    assert induce("sp", P(1, 1), 2, P(2)) == P(4, 2)  # [5,1] collapses
    with pytest.raises(InvalidBlock):
        induce("sp", P(1, 1), 2, P(1))
    with pytest.raises(InvalidBlock):
        induce("sp", P(1, 1), 0)


def test_gl_merge():
    assert gl_merge(P(2, 2, 2), P(2, 2, 2)) == P(2, 2, 2, 2, 2, 2)
    assert gl_merge(P(1, 1), P(1)) == P(1, 1, 1)
    assert gl_merge(P(2, 1), P(1)) == P(2, 1, 1)


def test_un_induce():
    assert un_induce("sp", P(4, 4, 2, 2), 4) == P(3, 3, 2, 2)
    assert un_induce("soD", P(5, 5, 5, 3, 3, 1), 3) == P(3, 3, 3, 2, 2, 1)
    assert un_induce("sp", P(4, 4, 2, 2), 2) == P(2, 2, 1, 1)


@pytest.mark.parametrize("family,p,i", [
    ("sp", P(4, 4, 2, 2), 3),  # wrong parity
    ("sp", P(4, 4, 4, 2), 4),  # multiplicity 3
    ("soB", P(5, 3, 1), 3),  # multiplicity 1
])
def test_un_induce_preconditions(family, p, i):
    with pytest.raises(PreconditionViolated):
        un_induce(family, p, i)


def test_un_induce_sl_unsupported():
    with pytest.raises(UnsupportedFamily):
        un_induce("sl", P(2, 2), 2)


def test_classify_examples():
    s = classify_induction("sp", P(3, 3, 2, 2), P(4, 4, 2, 2), 1)
    assert s.kind == "TypeII" and s.degree == 2 and s.witness == 4
    assert classify_induction("sp", P(4, 4, 2, 2), P(6, 6, 4, 4), 4).kind == "TypeI"
    t = classify_induction("soD", P(3, 3, 3, 2, 2, 1), P(5, 5, 5, 2, 2, 1), 3)
    assert t.kind == "TypeI" and t.degree == 1


def test_classify_size_mismatch():
    with pytest.raises(ChainMismatch):
        classify_induction("sp", P(2, 2), P(4, 4), 1)


def test_classify_sl_always_type_i():
    assert classify_induction("sl", P(1, 1), P(3, 3), 2).kind == "TypeI"
    assert type_ii_witness("sl", P(1, 1), P(3, 3), 2) is None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["sp", "soB", "soD"]), st.integers(0, 10), st.integers(1, 4),
       st.data())
def test_induce_properties(family, size, k, data):
    choices = [Partition(q) for q in partitions_of(size) if satisfies_parity(family, Partition(q))]
    if family == "soB":
        choices = [p for p in choices if p.size % 2 == 1]
    if not choices:
        return
    p = data.draw(st.sampled_from(choices))
    pbar = induce(family, p, k)
    assert pbar.size == p.size + 2 * k
    assert satisfies_parity(family, pbar)
    step = classify_induction(family, p, pbar, k)
    if step.kind == "TypeII":
        assert un_induce(family, pbar, step.witness) == p


# ---------------------------------------------------------------- rather odd, pi1

def test_rather_odd():
    assert is_rather_odd(P(5, 3, 1))
    assert not is_rather_odd(P(3, 3, 3, 2, 2, 1))
    assert not is_rather_odd(P(11, 11, 11, 3, 3, 1))


def test_pi1_examples():
    assert pi1_order(OrbitId("sp", 20, P(6, 6, 4, 4))) == 4
    assert pi1_order(OrbitId("soD", 14, P(3, 3, 3, 2, 2, 1))) == 2
    assert pi1_order(OrbitId("soD", 40, P(11, 11, 11, 3, 3, 1))) == 4
    assert pi1_order(OrbitId("soB", 9, P(5, 3, 1))) == 8
    assert b3_cover_degree(P(5, 3, 1)) == 4
    with pytest.raises(UnsupportedFamily):
        pi1_order(OrbitId("sl", 3, P(2, 1)))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=5), st.integers(1, 8))
def test_pi1_doubles_with_new_even_part(halves, new):
    parts = []
    for h in halves:
        parts += [h, h] if h % 2 else [h]
    p = Partition(tuple(parts))
    even = 2 * new
    if even in p.parts:
        return
    q = Partition(p.parts + (even,))
    a = pi1_order(OrbitId("sp", p.size, p))
    b = pi1_order(OrbitId("sp", q.size, q))
    assert b == 2 * a


# ---------------------------------------------------------------- core shapes

def test_core_case_examples():
    assert core_case("sp", P(1, 1, 1, 1)) == "A"
    assert core_case("soD", P(3, 3, 3, 2, 2, 1)) == "B2"
    assert core_case("soB", P(5, 3, 1)) == "B3"
    assert core_case("soB", P(5, 3, 1), gl_blocks=[2]) == "B1"


def test_core_case_rejects():
    assert core_case("sp", P(2, 2)) == "NotACore"  # r_2 = 2
    assert core_case("sp", P(3, 2, 1)) == "NotACore"  # parity
    assert core_case("sl", P(2)) == "NotACore"


# ---------------------------------------------------------------- chains

def test_chain_c10():
    core = OrbitId("sp", 4, P(1, 1, 1, 1))
    steps = [(3, P(1, 1, 1)), (1, P(1)), (4, P(1, 1, 1, 1))]
    chain = check_chain(core, steps, OrbitId("sp", 20, P(6, 6, 4, 4)))
    assert [s.result for s in chain] == [P(3, 3, 2, 2), P(4, 4, 2, 2), P(6, 6, 4, 4)]
    assert [s.kind for s in chain] == ["TypeII", "TypeII", "TypeI"]
    assert [s.witness for s in chain] == [2, 4, None]


def test_chain_empty():
    o = OrbitId("sp", 4, P(2, 2))
    assert check_chain(o, [], o) == []


def test_chain_wrong_target():
    core = OrbitId("sp", 4, P(1, 1, 1, 1))
    steps = [(3, None), (1, None), (4, None)]
    with pytest.raises(ChainMismatch) as info:
        check_chain(core, steps, OrbitId("sp", 20, P(6, 6, 4, 2, 2)))
    assert info.value.step == 2


def test_chain_bad_block():
    core = OrbitId("sp", 4, P(1, 1, 1, 1))
    with pytest.raises(ChainMismatch) as info:
        check_chain(core, [(3, None), (2, P(1))], OrbitId("sp", 14, P(4, 4, 2, 2, 2)))
    assert info.value.step == 1
