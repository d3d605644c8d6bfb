"""Self-verification suite.

Every check recomputes a family of closed-form claims from first principles
(exact arithmetic, enumeration, normal forms) and reports pass/fail.  The
reference decimals and closed-form constants frozen here are the published
table values that the computations must reproduce.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import deform, svp, tame
from .matrices import (
    ExactMatrix,
    Lattice,
    dual,
    gram_of,
    index_of,
    lattices_equal,
    recognize_scaled_An,
    recognize_scaled_identity,
)
from .scalar import QuadScalar, compare_quad

# (p, q, d, printed center density, printed minimum of the volume-1 rescaling)
TABLE_E8 = [
    (7, 5, 1, "0.0102162", "1.27169"),
    (17, 13, 7, "0.0124829", "1.33702"),
    (31, 25, 17, "0.0159616", "1.42177"),
    (49, 41, 31, "0.0192763", "1.49045"),
    (71, 61, 49, "0.0222471", "1.54482"),
    (97, 85, 71, "0.0248757", "1.58856"),
    (127, 113, 97, "0.0272007", "1.62445"),
    (161, 145, 127, "0.0292647", "1.65442"),
    (241, 221, 199, "0.0327571", "1.70171"),
    (337, 313, 287, "0.0355924", "1.7374"),
    (449, 421, 391, "0.0379372", "1.76533"),
    (647, 613, 577, "0.0407789", "1.7975"),
    (881, 841, 799, "0.0430324", "1.82183"),
    (1249, 1201, 1151, "0.0453987", "1.84638"),
    (1799, 1741, 1681, "0.0476548", "1.8689"),
    (2591, 2521, 2449, "0.0496839", "1.88849"),
    (4049, 3961, 3871, "0.0518646", "1.90888"),
    (6727, 6613, 6497, "0.0539629", "1.9279"),
    (30257, 30013, 29767, "0.0582025", "1.9647"),
    (95047, 94613, 94177, "0.0600098", "1.97977"),
    (301087, 300313, 299537, "0.0610791", "1.98853"),
]

# (p, q, d, e, C): published closed form delta = 2^(-n/2-e) * q^n * p^(3-n) / C,
# where p^3 + d^3 = 2^e * C with C odd
TABLE_DN = [
    (7, 5, 1, 3, 43),
    (17, 13, 7, 3, 657),
    (31, 25, 17, 4, 2169),
    (49, 41, 31, 4, 9215),
    (71, 61, 49, 3, 59445),
    (97, 85, 71, 3, 158823),
    (127, 113, 97, 5, 92533),
    (161, 145, 127, 5, 194427),
    (199, 181, 161, 3, 1506735),
    (287, 265, 241, 4, 2352339),
    (391, 365, 337, 3, 12256153),
    (511, 481, 449, 6, 3499245),
]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    name: str
    passed: bool
    detail: str
    seconds: float


def _printed_match(computed: float, printed: str) -> bool:
    """True when `computed` rounds to the printed decimal (half-ulp in the
    last printed place)."""
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return abs(computed - float(printed)) <= 0.5000001 * 10.0 ** (-decimals)


def _canonical_units(n: int) -> set:
    units = set()
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        neg = tuple(-v for v in e)
        units.add(min(e, neg))
    return units


# -- individual checks ----------------------------------------------------------


def check_e8_table(level: str) -> tuple[bool, str]:
    rows = TABLE_E8 if level == "full" else TABLE_E8[:6]
    bad = []
    for p, q, d, delta_s, lam_s in rows:
        alpha = Fraction(p, q)
        delta = deform.e8_center_density(alpha).to_float()
        lam = deform.normalized_min_sq("e8", alpha)
        if not _printed_match(delta, delta_s):
            bad.append(f"({p},{q}) density {delta} != {delta_s}")
        if not _printed_match(lam, lam_s):
            bad.append(f"({p},{q}) normalized minimum {lam} != {lam_s}")
    return not bad, "; ".join(bad) or f"{len(rows)} rows reproduced"


def check_dn_table(level: str) -> tuple[bool, str]:
    rows = TABLE_DN if level == "full" else TABLE_DN[:6]
    bad = []
    for p, q, d, e, c in rows:
        if p ** 3 + d ** 3 != 2 ** e * c or c % 2 == 0:
            bad.append(f"({p},{q}) constant decomposition broken")
            continue
        for n in (3, 4, 5):
            printed_sq = Fraction(
                q ** (2 * n) * p ** 6, p ** (2 * n) * 2 ** (n + 2 * e) * c * c
            )
            delta = deform.dn_center_density(n, Fraction(p, q))
            if (delta * delta).rational_value() != printed_sq:
                bad.append(f"({p},{q}) n={n} closed form mismatch")
    return not bad, "; ".join(bad) or f"{len(rows)} rows, n in 3..5, exact"


def _gwr_by_enumeration(gram: ExactMatrix, n: int) -> Optional[str]:
    rep = svp.svp_report(gram)
    if rep.lambda1_sq != 2:
        return f"lambda1^2 = {rep.lambda1_sq}"
    if rep.kissing != 2 * n:
        return f"kissing = {rep.kissing}"
    if set(rep.minimal_coeffs) != _canonical_units(n):
        return "minimal set is not the basis"
    if not rep.is_gwr:
        return "not flagged GWR"
    return None


def check_gwr_enumeration(level: str) -> tuple[bool, str]:
    triples = sorted(
        {(p, q, d) for p, q, d, *_ in TABLE_E8}
        | {(p, q, d) for p, q, d, *_ in TABLE_DN}
    )
    dims = (3, 4, 5, 6)
    e8_triples = triples
    if level != "full":
        triples = triples[:4]
        dims = (3, 4)
        e8_triples = triples[:3]
    bad = []
    for p, q, d in triples:
        alpha = Fraction(p, q)
        for n in dims:
            gram = gram_of(deform.dn_generator(n, alpha))
            failure = _gwr_by_enumeration(gram, n)
            if failure:
                bad.append(f"Dn n={n} alpha={p}/{q}: {failure}")
    for p, q, d in e8_triples:
        gram = gram_of(deform.e8_generator(Fraction(p, q)))
        failure = _gwr_by_enumeration(gram, 8)
        if failure:
            bad.append(f"E8 alpha={p}/{q}: {failure}")
    count = len(triples) * len(dims) + len(e8_triples)
    return not bad, "; ".join(bad[:5]) or f"{count} lattices certified"


_SWEEP_CACHE: dict = {}


def _tame_sweep(level: str):
    if level in _SWEEP_CACHE:
        return _SWEEP_CACHE[level]
    dims = range(2, 9) if level == "full" else range(2, 5)
    out = []
    for n in dims:
        for a in sorted({1, 2, n}):
            params = tame.TameParams.from_a(n, Fraction(a))
            for r in range(-(n - 1), n):
                if r == 0:
                    continue
                for s in range(-3, 4):
                    cls = tame.classify_wr(params, r, s)
                    if cls.tag == "OutsideWindow":
                        continue
                    out.append((n, a, params, r, s, cls))
    _SWEEP_CACHE[level] = out
    return out


def check_sublattice_law(level: str) -> tuple[bool, str]:
    bad = []
    for n, a, params, r, s, cls in _tame_sweep(level):
        gram = tame.phi_sublattice_gram(params, r, s)
        claim = tame.sublattice_min_sq_claim(params, r, s)
        rep = svp.svp_report(gram)
        label = f"n={n} a={a} r={r} s={s}"
        if rep.lambda1_sq != claim:
            bad.append(f"{label}: minimum {rep.lambda1_sq} != {claim}")
            continue
        c = Fraction((n * Fraction(a) - 1) * r * r, n - 1)
        if cls.tag == "GwrInterior":
            # At the lower window edge the all-ones coefficient vector ties
            # the minimum exactly (m^2 n == a r^2 + (m^2 - r^2)/n there), so
            # one extra +/- pair appears and genericity of the minimal set
            # fails; strictly inside, the basis pairs are the whole set.
            if cls.ratio_sq == cls.window[0]:
                ones = tuple([1] * n)
                extras = [
                    u for u in rep.minimal_coeffs
                    if u not in (ones, tuple([-1] * n)) and sum(abs(x) for x in u) > 1
                ]
                if rep.kissing != 2 * n + 2 or extras:
                    bad.append(f"{label}: lower-edge kissing {rep.kissing}")
            elif rep.kissing != 2 * n:
                bad.append(f"{label}: interior kissing {rep.kissing}")
        elif cls.tag == "AnBoundary":
            if rep.kissing != n * (n + 1):
                bad.append(f"{label}: boundary kissing {rep.kissing}")
            if recognize_scaled_An(gram) != c:
                bad.append(f"{label}: boundary shape not c*An with c={c}")
        elif cls.tag == "ZnPoint":
            if recognize_scaled_identity(gram) != c:
                bad.append(f"{label}: shape not c*I with c={c}")
    total = len(_tame_sweep(level))
    return not bad, "; ".join(bad[:5]) or f"{total} in-window specs verified"


def check_density_bounds(level: str) -> tuple[bool, str]:
    bad = []
    seen_tags = set()
    for n, a, params, r, s, cls in _tame_sweep(level):
        delta = tame.sublattice_center_density(params, r, s)
        d2 = (delta * delta).rational_value()
        lo = Fraction(1, 4 ** n)
        hi = Fraction(1, (n + 1) * 2 ** n)
        label = f"n={n} a={a} r={r} s={s}"
        if not lo <= d2 <= hi:
            bad.append(f"{label}: delta^2={d2} outside [{lo}, {hi}]")
        if cls.tag == "ZnPoint" and d2 != lo:
            bad.append(f"{label}: lower endpoint not attained")
        if cls.tag == "AnBoundary" and d2 != hi:
            bad.append(f"{label}: upper endpoint not attained")
        seen_tags.add(cls.tag)
    if not {"ZnPoint", "AnBoundary"} <= seen_tags:
        bad.append(f"sweep missed endpoint cases; saw {sorted(seen_tags)}")
    return not bad, "; ".join(bad[:5]) or "bounds and endpoints exact"


def check_named_constructions(level: str) -> tuple[bool, str]:
    bad = []
    built = tame.construct_doubled_e8_integral()
    reference = tame.reference_doubled_e8()
    if not lattices_equal(built, reference):
        bad.append("scaled odd E8 construction differs from reference")
    if built.gram.det() != 4 ** 8:
        bad.append(f"det {built.gram.det()} != 4^8")
    z8 = Lattice(generator=ExactMatrix.identity(8))
    if index_of(built, z8) != 256:
        bad.append("index in Z^8 is not 256")
    nine = tame.construct_dim9_densest()
    rep9 = svp.svp_report(nine.gram)
    if rep9.lambda1_sq != 8:
        bad.append(f"dim-9 minimum {rep9.lambda1_sq} != 8")
    if abs(nine.generator.det()) != 2 ** 9:
        bad.append("dim-9 volume != 2^9")
    vol9 = abs(nine.generator.det()).rational_value()
    delta9_sq = Fraction(8 ** 9, 4 ** 9) / (vol9 * vol9)
    if delta9_sq != Fraction(1, 512):
        bad.append(f"dim-9 delta^2 = {delta9_sq} != 1/512")
    an8 = tame.construct_An_from_Zn(8)
    if recognize_scaled_An(an8.gram) != 16:
        bad.append("image of Z^8 is not 16*An-shaped")
    dims = range(2, 9) if level == "full" else range(2, 5)
    for n in dims:
        for r in range(1, n):
            for signed in (r, -r):
                lattice = tame.construct_An_general(n, signed)
                if recognize_scaled_An(lattice.gram) != r * r * (n + 1):
                    bad.append(f"general An n={n} r={signed} scale mismatch")
    return not bad, "; ".join(bad[:5]) or "all named constructions verified"


def check_duality(level: str) -> tuple[bool, str]:
    bad = []
    rng = random.Random(20230817)
    count = 50 if level == "full" else 15
    for _ in range(count):
        n = rng.randint(2, 9)
        while True:
            h = Fraction(rng.randint(-3, 6), rng.randint(1, 5))
            if h * n > -1:
                break
        params = tame.TameParams(n, 1 + h * (n - 1), h)
        product = tame.tame_gram(params) @ tame.tame_gram(tame.tame_dual(params))
        if product != ExactMatrix.identity(n):
            bad.append(f"dual Gram product n={n} h={h}")
    # self-dual-up-to-scale sublattices (s = r*h integral)
    for n in range(2, 7):
        for h in (0, 1, 2):
            params = tame.TameParams(n, 1 + h * (n - 1), Fraction(h))
            for r in (1, 2, -1):
                if abs(r) >= n:
                    continue
                sub_gram = tame.phi_sublattice_gram(params, r, r * h)
                dual_gram = tame.dual_of_sublattice(params, r).gram
                if sub_gram @ dual_gram != ExactMatrix.identity(n):
                    bad.append(f"sublattice dual product n={n} h={h} r={r}")
    # dualization of the coordinate-level construction on Z^n
    spec_count = 20 if level == "full" else 8
    done = 0
    while done < spec_count:
        n = rng.randint(2, 6)
        c = tuple(rng.randint(-3, 3) for _ in range(n))
        v1 = tuple(rng.randint(-3, 3) for _ in range(n))
        t1 = sum(x * y for x, y in zip(c, v1))
        if abs(t1) < 2:
            continue
        r = rng.choice([k for k in range(-abs(t1) + 1, abs(t1)) if k != 0])
        s = rng.randint(-3, 3)
        if r + s * t1 == 0:
            continue
        spec = tame.SublatticeSpec(functional=c, pivot=v1, r=r, s=s)
        identity = ExactMatrix.identity(n)
        image = tame.phi_image_generator(identity, spec)
        dual_image = dual(Lattice(generator=image))
        claimed_gen = tame.phi_image_generator(identity, tame.dual_spec(spec))
        claimed = Lattice(
            generator=claimed_gen.scale(tame.dual_image_scale(spec))
        )
        if not lattices_equal(dual_image, claimed):
            bad.append(f"dualized construction n={n} c={c} v1={v1} r={r} s={s}")
        done += 1
    return not bad, "; ".join(bad[:5]) or "duality identities exact"


def check_monotonicity(level: str) -> tuple[bool, str]:
    bad = []
    points = 50 if level == "full" else 12
    dims = (3, 4, 5) if level == "full" else (3,)
    step = Fraction(2, 5 * (points - 1))  # rational grid inside [1, 7/5]
    for n in dims:
        grid = [1 + i * step for i in range(points)] + [deform.SQRT2]
        # density = 1 / (2^(n/2) * volume), so strictly decreasing density
        # is exactly strictly increasing volume (comparable across radicands)
        volumes = [deform.dn_volume(n, alpha) for alpha in grid]
        for left, right in zip(volumes, volumes[1:]):
            if compare_quad(left, right) >= 0:
                bad.append(f"Dn density not strictly decreasing at n={n}")
                break
    hex_grid = [Fraction(i, 2 * (points - 1)) for i in range(points)]
    hex_densities = [deform.hex_center_density(a) for a in hex_grid]
    for left, right in zip(hex_densities, hex_densities[1:]):
        if compare_quad(left, right) >= 0:
            bad.append("planar density not strictly increasing")
            break
    for n in range(2, 13):
        for a in sorted({1, 2, n}):
            f_l, f_x0, f_u = tame.density_window_extremes(n, a)
            if not f_x0 < f_l <= f_u:
                bad.append(f"window extreme ordering fails n={n} a={a}")
    return not bad, "; ".join(bad[:5]) or "all monotonicity grids strict"


def _brute_force_below(gram: ExactMatrix, bound: Fraction) -> list:
    n = gram.rows
    inverse = gram.inverse()
    limits = []
    for i in range(n):
        cap = bound * inverse[i, i].rational_value()
        t = 0
        while (t + 1) * (t + 1) <= cap:
            t += 1
        limits.append(t)
    rows = [[v.x for v in row] for row in gram.entries]
    out = []
    for u in itertools.product(*[range(-l, l + 1) for l in limits]):
        if not any(u):
            continue
        norm = sum(
            rows[i][j] * u[i] * u[j] for i in range(n) for j in range(n)
        )
        if norm <= bound:
            out.append(u)
    return sorted(out)


def check_enumeration_oracle(level: str) -> tuple[bool, str]:
    rng = random.Random(42)
    target = 100 if level == "full" else 25
    bad = []
    done = 0
    while done < target:
        n = rng.randint(2, 4)
        basis = ExactMatrix(
            [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        )
        if not basis.det():
            continue
        gram = basis.transpose() @ basis
        if any(
            abs(gram[i, j].rational_value()) > 6
            for i in range(n)
            for j in range(n)
        ):
            continue
        bound = min(gram[i, i] for i in range(n)).rational_value()
        fast = sorted(svp.enumerate_below(gram, bound))
        slow = _brute_force_below(gram, bound)
        if fast != slow:
            bad.append(f"mismatch on gram {gram}")
        done += 1
    return not bad, "; ".join(bad[:3]) or f"{target} random forms agree"


def check_theta_flatness(level: str) -> tuple[bool, str]:
    bad = []
    one_d = ExactMatrix.identity(1)
    value = svp.theta_truncated(one_d, 0.5, 4).value
    if value != 2.125:
        bad.append(f"1-D truncated theta {value} != 2.125")
    cases = [(0.5, 25), (1.0, 6), (2.0, 3)]
    dims = (2, 4, 8) if level == "full" else (2, 4)
    for sigma, radius in cases:
        q = math.exp(-2.0 * math.pi * sigma * sigma)
        # the one-dimensional sum is 1 + t with t possibly ~1e-11, so the
        # product-minus-one oracle must be formed without cancellation
        one_dim_tail = math.fsum(2.0 * q ** (m * m) for m in range(1, 9))
        for n in dims:
            if level != "full" and sigma == 0.5 and n > 2:
                continue
            lattice = Lattice(generator=ExactMatrix.identity(n))
            eps = svp.flatness_factor(lattice, sigma, radius)
            oracle = math.expm1(n * math.log1p(one_dim_tail))
            if abs(eps - oracle) > 1e-10 * abs(oracle):
                bad.append(f"sigma={sigma} n={n}: {eps} vs {oracle}")
    return not bad, "; ".join(bad) or "theta and flatness match oracles"


CHECKS: list[tuple[str, str, Callable[[str], tuple[bool, str]]]] = [
    ("c1", "deformed-E8 table reproduction", check_e8_table),
    ("c2", "deformed-Dn closed-form densities", check_dn_table),
    ("c3", "GWR certification by enumeration", check_gwr_enumeration),
    ("c4", "sublattice minimum/kissing/shape law", check_sublattice_law),
    ("c5", "center-density bounds", check_density_bounds),
    ("c6", "named constructions", check_named_constructions),
    ("c7", "duality identities", check_duality),
    ("c8", "monotonicity and window extremes", check_monotonicity),
    ("c9", "enumeration vs brute force", check_enumeration_oracle),
    ("c10", "theta and flatness sanity", check_theta_flatness),
]


def run_checks(
    level: str = "full", only: Optional[set[str]] = None
) -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    results = []
    for check_id, name, func in CHECKS:
        if only is not None and check_id not in only:
            continue
        start = time.monotonic()
        passed, detail = func(level)
        results.append(
            CheckResult(check_id, name, passed, detail, time.monotonic() - start)
        )
    return results
