from collections import defaultdict

import pytest

from fractalham.constructions.triangle3 import (
    ROLES, base_script, fill_tile_names, fill_units, layout_types, mixed_join_script,
    piece_script, tile_breakdown,
)
from fractalham.core import OPPOSITE, STEP, Assembly, is_tau_stable, translate
from fractalham.engine import (
    StepUnstable, candidate_translations, combine, guided_assemble, run_script,
)
from fractalham.fractals import in_triangle


def test_tile_count(tri3):
    assert tri3.target_tile_count == 990
    assert abs(tri3.count_ratio() - 1) <= 0.2
    assert sum(tile_breakdown().values()) == tri3.tile_count
    assert tri3.system.hands == 3 and tri3.system.tau == 2


@pytest.mark.parametrize("m,size", [(1, 70), (2, 222), (3, 766)])
def test_stage_sizes_and_stability(tri3, m, size):
    a = guided_assemble(tri3.system, tri3.stage_scripts[m])
    assert len(a) == size
    assert is_tau_stable(a, tri3.system.tileset, 2)


@pytest.mark.parametrize("m", [2, 3])
def test_products_within_scale3_triangle(tri3, m):
    for c in ROLES:
        a = guided_assemble(tri3.system, base_script(m, c))
        assert all(in_triangle(p, 3) for p in a)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("types", [{"B": "B", "L": "L", "R": "B"},
                                   {"B": "R", "L": "R", "R": "L"},
                                   {"B": "L", "L": "B", "R": "R"}])
def test_mixed_joins_rejected(tri3, m, types):
    with pytest.raises(StepUnstable):
        run_script(tri3.system, mixed_join_script(m, types))


@pytest.mark.parametrize("m", [2, 3])
def test_uniform_join_accepted(tri3, m):
    for t in ROLES:
        env = run_script(tri3.system, mixed_join_script(m, {r: t for r in ROLES}))
        assert is_tau_stable(env[f"mixed{m}"], tri3.system.tileset, 2)


@pytest.mark.parametrize("m", [2, 3])
def test_layout_types_consistent(tri3, m):
    ts = tri3.system.tileset
    for name, layouts in layout_types(m).items():
        t = ts[name]
        assert layouts == {tuple(sorted((s, g.label, g.strength) for s, g in t.glues()))}


def _keystone_parts(c, t, m=2):
    units, k = fill_units(c, m)
    names = fill_tile_names(c, t, m)
    *apart, rb = units[k]
    x0, y0 = apart[0]
    ka = Assembly({(x - x0, y - y0): names[(x, y)] for x, y in apart})
    kb = Assembly({(0, 0): names[rb]})
    return ka, kb


def test_keystone_needs_three_hands(tri3):
    sysm = tri3.system
    for c in ROLES:
        base = guided_assemble(sysm, base_script(2, c))
        for t in ROLES:
            ka, kb = _keystone_parts(c, t)
            assert not combine([base, ka], sysm)
            assert not combine([base, kb], sysm)
            assert not combine([ka, kb], sysm)
            assert combine([base, ka, kb], sysm)


def test_no_keystone_before_completion(tri3):
    # the stage-1 combinable shapes expose no glue a keystone can use
    sysm = tri3.system
    for c in ROLES:
        for t in ROLES:
            ka, kb = _keystone_parts(c, t)
            for r in ROLES:
                p = guided_assemble(sysm, piece_script(1, r, c))
                assert not (combine([p, ka, kb], sysm) | combine([p, ka], sysm)
                            | combine([p, kb], sysm))


# ---------------------------------------------------------------- determinism of filling

def _glue_index(ts):
    idx = defaultdict(list)
    for t in ts.values():
        for side, g in t.glues():
            idx[(side, g.label)].append((t.name, g.strength))
    return idx


def _single_attachments(asm, ts, idx):
    """(point, tile name) pairs a single tile could attach to at temperature 2."""
    empty = {(x + dx, y + dy) for x, y in asm for dx, dy in STEP.values()} - set(asm)
    out = set()
    for q in empty:
        total = defaultdict(int)
        for side, (dx, dy) in STEP.items():
            nb = asm.get((q[0] + dx, q[1] + dy))
            if nb is None:
                continue
            g = ts[nb].glue(OPPOSITE[side])
            if g is None:
                continue
            for name, s in idx[(side, g.label)]:
                total[name] += s
        out |= {(q, n) for n, v in total.items() if v >= 2}
    return out


def _fill_states(sysm, m, r, t):
    env = run_script(sysm, piece_script(m, r, t))
    pid = f"P{m}({r},{t})"
    states = [env[f"B{m}({r})"]] + [a for s, a in env.items() if s.startswith(pid)
                                    and ".u" not in s and ".ka" not in s]
    return env[pid], states


def _unit_prefixes(m, r, t):
    names = fill_tile_names(r, t, m)
    units, k = fill_units(r, m)
    out = {}
    for i, u in enumerate(units):
        if len(u) < 2 or i == k:
            continue
        for j in range(1, len(u) + 1):
            x0, y0 = u[0]
            a = Assembly({(x - x0, y - y0): names[(x, y)] for x, y in u[:j]})
            out[frozenset(a.items())] = a
    return list(out.values())


@pytest.mark.parametrize("m", [2, 3])
def test_single_tiles_only_attach_where_intended(tri3, m):
    sysm = tri3.system
    ts = sysm.tileset
    idx = _glue_index(ts)
    for r in ROLES:
        for t in ROLES:
            final, states = _fill_states(sysm, m, r, t)
            for s in states:
                for q, name in _single_attachments(s, ts, idx):
                    assert final.get(q) == name, (r, t, q, name)


def _unit_scan(sysm, m):
    ts = sysm.tileset
    for r in ROLES:
        for t in ROLES:
            final, states = _fill_states(sysm, m, r, t)
            prefixes = _unit_prefixes(m, r, t)
            for s in states:
                for p in prefixes:
                    for v in candidate_translations(s, p, ts):
                        moved = translate(p, v)
                        if any(q in s for q in moved):
                            continue
                        if is_tau_stable(Assembly({**s, **moved}), ts, 2):
                            assert all(final.get(q) == n for q, n in moved.items()), (r, t, v)


def test_fill_units_only_attach_where_intended_level2(tri3):
    _unit_scan(tri3.system, 2)


@pytest.mark.slow
def test_fill_units_only_attach_where_intended_level3(tri3):
    _unit_scan(tri3.system, 3)
