import itertools
import random

import pytest

from fractalham.core import Assembly, Glue, TileSet, TileType, canonicalize, is_tau_stable
from fractalham.engine import (
    AssemblySystem, BudgetExceeded, ExplorationConfig, ExplorationReport, GuidedScript,
    HandCountExceeded, ScriptError, Step, StepOverlap, StepUnstable, atam_grow,
    candidate_translations, combine, combine_candidates, explore, guided_assemble,
    size_spectrum,
)
from micro import micro_systems
from oracles import brute_prod, brute_stable, canon


def one(name, **glues):
    return TileType(name, **{k: Glue(*v) for k, v in glues.items()})


def pair_system(strength=2):
    return AssemblySystem(TileSet([one("A", east=("x", strength)),
                                   one("B", west=("x", strength))]), tau=2, hands=2)


def tile(name):
    return Assembly({(0, 0): name})


# ---------------------------------------------------------------- candidate translations

def test_candidates_single_glue():
    t = TileSet([one("l", east=("a", 1)), one("r", west=("a", 1))])
    assert (1, 0) in candidate_translations(tile("l"), tile("r"), t)


def test_candidates_disjoint_labels():
    t = TileSet([one("l", east=("a", 1)), one("r", west=("b", 1))])
    assert candidate_translations(tile("l"), tile("r"), t) == set()


def test_candidates_self_pair():
    t = TileSet([one("s", east=("a", 2), west=("a", 2))])
    assert candidate_translations(tile("s"), tile("s"), t) == {(1, 0), (-1, 0)}


def test_candidates_brute_force_agreement():
    # every vector with a disjoint positive contact, found by scanning a window
    rng = random.Random(7)
    sysm = micro_systems()["grid"]
    t = sysm.tileset
    rep = explore(sysm, ExplorationConfig(max_size=5))
    pieces = list(rep.assemblies.values())
    for _ in range(30):
        a, b = rng.choice(pieces), rng.choice(pieces)
        got = candidate_translations(a, b, t)
        want = set()
        for v in itertools.product(range(-8, 9), repeat=2):
            moved = {(x + v[0], y + v[1]): n for (x, y), n in b.items()}
            if any(q in a for q in moved):
                continue
            union = {**a, **moved}
            touching = False
            for (x, y), n in a.items():
                for side, (dx, dy) in (("east", (1, 0)), ("west", (-1, 0)),
                                       ("north", (0, 1)), ("south", (0, -1))):
                    q = (x + dx, y + dy)
                    if q in moved:
                        ga = t[n].glue(side)
                        opp = {"east": "west", "west": "east", "north": "south",
                               "south": "north"}[side]
                        gb = t[union[q]].glue(opp)
                        if ga and gb and ga.label == gb.label and ga.strength > 0:
                            touching = True
            if touching:
                want.add(v)
        assert got == want


# ---------------------------------------------------------------- combine

def test_combine_strength_two_pair():
    got = combine([tile("A"), tile("B")], pair_system())
    assert got == {Assembly({(0, 0): "A", (1, 0): "B"})}


def test_combine_single_weak_bond():
    assert combine([tile("A"), tile("B")], pair_system(1)) == set()


def test_combine_cooperative_trio():
    sysm = micro_systems()["trio"]
    domino = Assembly({(0, 0): "D0", (0, 1): "D1"})
    got = combine([domino, tile("B"), tile("C")], sysm)
    assert got == {Assembly({(0, 0): "D0", (0, 1): "D1", (1, 0): "B", (1, 1): "C"})}
    # any two of the three are not enough
    assert combine([domino, tile("B")], sysm) == set()
    assert combine([tile("B"), tile("C")], sysm) == set()


def test_combine_hand_limit():
    with pytest.raises(HandCountExceeded):
        combine([tile("A"), tile("B"), tile("A")], pair_system())


def test_combine_is_order_insensitive():
    sysm = micro_systems()["trio"]
    domino = Assembly({(0, 0): "D0", (0, 1): "D1"})
    pieces = [domino, tile("B"), tile("C")]
    results = {frozenset(combine(list(p), sysm)) for p in itertools.permutations(pieces)}
    assert len(results) == 1


def test_combine_rejects_unstable_piece():
    sysm = pair_system(1)
    with pytest.raises(Exception):
        combine([Assembly({(0, 0): "A", (1, 0): "B"}), tile("A")], sysm)


def test_piece_level_verdict_matches_full_graph_on_micro_corpus():
    for sysm in micro_systems().values():
        rep = explore(sysm, ExplorationConfig(max_size=6))
        pieces = sorted(rep.assemblies.values(), key=lambda a: sorted(a.items()))
        for r in range(2, min(sysm.hands, 3) + 1):
            for combo in itertools.combinations_with_replacement(pieces, r):
                if sum(map(len, combo)) > 12:
                    continue
                for union, verdict in combine_candidates(list(combo), sysm):
                    assert verdict == is_tau_stable(union, sysm.tileset, sysm.tau)
                    assert verdict == brute_stable(union, sysm.tileset, sysm.tau)


# ---------------------------------------------------------------- explore

def test_explore_pair_system():
    rep = explore(pair_system(), ExplorationConfig(max_size=10))
    assert rep.saturated
    assert len(rep.assemblies) == 3
    assert size_spectrum(rep) == [(1, 2), (2, 1)]


def test_explore_max_size_one_is_singletons():
    for sysm in micro_systems().values():
        rep = explore(sysm, ExplorationConfig(max_size=1))
        assert rep.saturated
        assert {frozenset(a.items()) for a in rep.assemblies.values()} == \
            {frozenset({((0, 0), n)}) for n in sysm.tileset}


def test_empty_spectrum():
    rep = ExplorationReport(assemblies={}, provenance={}, rounds=0, saturated=True, max_size=1)
    assert size_spectrum(rep) == []


@pytest.mark.parametrize("name", sorted(micro_systems()))
def test_explore_matches_brute_force(name):
    sysm = micro_systems()[name]
    max_size = 6 if name == "square4" else 8
    rep = explore(sysm, ExplorationConfig(max_size=max_size))
    assert rep.saturated
    got = {canon(dict(a)) for a in rep.assemblies.values()}
    assert got == brute_prod(sysm.tileset, sysm.tau, sysm.hands, max_size)


def test_explore_records_stable_canonical_assemblies():
    sysm = micro_systems()["trio"]
    rep = explore(sysm, ExplorationConfig(max_size=8))
    for h, a in rep.assemblies.items():
        c, h2 = canonicalize(a)
        assert c == a and h2 == h
        assert is_tau_stable(a, sysm.tileset, sysm.tau)


def test_explore_provenance_rebuilds_each_assembly():
    sysm = micro_systems()["trio"]
    rep = explore(sysm, ExplorationConfig(max_size=8))
    for h, a in rep.assemblies.items():
        prov = rep.provenance[h]
        if not prov:
            assert len(a) == 1
            continue
        tiles = {}
        for ph, (ox, oy) in prov:
            for (x, y), n in rep.assemblies[ph].items():
                tiles[(x + ox, y + oy)] = n
        assert Assembly(tiles) == a
        assert len(prov) <= sysm.hands


def test_explore_budget():
    sysm = micro_systems()["grid"]
    with pytest.raises(BudgetExceeded) as e:
        explore(sysm, ExplorationConfig(max_size=8, max_states=3))
    assert e.value.report is not None and not e.value.report.saturated


def test_explore_round_limit_leaves_unsaturated():
    rep = explore(micro_systems()["grid"], ExplorationConfig(max_size=8, max_rounds=1))
    assert not rep.saturated and rep.rounds == 1


def test_triangle6_explore_to_30(tri6):
    rep = explore(tri6.system, ExplorationConfig(max_size=30))
    assert rep.saturated
    biggest = rep.largest()
    assert {len(a) for a in biggest} == {30}
    a2 = canonicalize(guided_assemble(tri6.system, tri6.stage_scripts[2]))[0]
    assert biggest == [a2]


def test_triangle6_spectrum_above_30(tri6_report_102):
    sizes = {s for s, _ in size_spectrum(tri6_report_102) if s > 30}
    assert sizes == {102}


# ---------------------------------------------------------------- guided scripts

def test_guided_pair():
    script = GuidedScript([Step("ab", (("A", (0, 0)), ("B", (1, 0))))])
    assert guided_assemble(pair_system(), script) == Assembly({(0, 0): "A", (1, 0): "B"})


def test_guided_unstable_step_reports_cut():
    script = GuidedScript([Step("ab", (("A", (0, 0)), ("B", (1, 0))))])
    with pytest.raises(StepUnstable) as e:
        guided_assemble(pair_system(1), script)
    assert e.value.cut_weight == 1


def test_guided_overlap_and_hands():
    with pytest.raises(StepOverlap):
        guided_assemble(pair_system(), GuidedScript([Step("x", (("A", (0, 0)), ("B", (0, 0))))]))
    with pytest.raises(HandCountExceeded):
        guided_assemble(pair_system(), GuidedScript(
            [Step("x", (("A", (0, 0)), ("B", (1, 0)), ("B", (5, 0))))]))


def test_guided_undefined_reference():
    with pytest.raises(ScriptError):
        guided_assemble(pair_system(), GuidedScript([Step("x", (("nope", (0, 0)),))]))
    with pytest.raises(ScriptError):
        GuidedScript([Step("x", (("A", (0, 0)),)), Step("x", (("B", (0, 0)),))])


def test_guided_inline_pieces():
    piece = Assembly({(0, 0): "A", (1, 0): "B"})
    script = GuidedScript([Step("s", (("p", (0, 0)),))], pieces={"p": piece})
    assert guided_assemble(pair_system(), script) == piece
    with pytest.raises(ScriptError):
        guided_assemble(pair_system(1), script)


def test_guided_mixed_stage_near_triangles_unstable(tri6):
    steps = list(tri6.stage_scripts[4].steps)
    last = steps[-1]
    assert last.id == "A4"
    ops = list(last.operands)
    ops[0] = type(ops[0])("A2", ops[0].translation)
    steps[-1] = Step("mixed", tuple(ops))
    with pytest.raises(StepUnstable):
        guided_assemble(tri6.system, GuidedScript(steps))


# ---------------------------------------------------------------- aTAM

def test_atam_row():
    ts = TileSet([one("S", east=("a", 2)), one("T", west=("a", 2), east=("a", 2))])
    sysm = AssemblySystem(ts, tau=2, seed=tile("S"))
    got = atam_grow(sysm, 3)
    assert got == {Assembly({(0, 0): "S", (1, 0): "T", (2, 0): "T", (3, 0): "T"})}


def test_atam_weak_bond_keeps_seed():
    ts = TileSet([one("S", east=("a", 1)), one("T", west=("a", 1))])
    sysm = AssemblySystem(ts, tau=2, seed=tile("S"))
    assert atam_grow(sysm, 5) == {tile("S")}


def test_atam_cooperative_corner():
    ts = TileSet([one("S", east=("a", 1), north=("n", 2)),
                  one("E", west=("a", 1)),
                  one("N", south=("n", 2), east=("b", 1)),
                  one("C", west=("b", 1), south=("c", 1)),
                  one("F", north=("c", 1))])
    # C needs the row below and N beside it; E only ever touches one glue
    seed = Assembly({(0, 0): "S", (1, 0): "F"})
    sysm = AssemblySystem(ts, tau=2, seed=seed)
    got = atam_grow(sysm, 3)
    assert got == {Assembly({(0, 0): "S", (1, 0): "F", (0, 1): "N", (1, 1): "C"})}
    alone = AssemblySystem(ts, tau=2, seed=tile("S"))
    assert atam_grow(alone, 3) == {Assembly({(0, 0): "S", (0, 1): "N"})}


def test_atam_contains_seed():
    ts = TileSet([one("S", east=("a", 2), north=("b", 2)),
                  one("T", west=("a", 2), east=("a", 2), north=("b", 2)),
                  one("U", south=("b", 2))])
    seed = tile("S")
    for a in atam_grow(AssemblySystem(ts, tau=2, seed=seed), 4):
        assert a[(0, 0)] == "S"
