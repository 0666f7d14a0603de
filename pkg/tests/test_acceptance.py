"""Acceptance criteria for the package, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or on
failure) and asserts the stated tolerance.  Tolerances are pinned here, not
configurable: they are the contract.

Run:  pytest tests/test_acceptance.py -v -s
"""

import cmath
import itertools
import json
import math

import numpy as np
import pytest

from quadcr import (
    SpectralData,
    Side,
    check_criterion,
    check_maximum_principle,
    cr_residual,
    embed_quasicrystal,
    face_coefficients,
    generate_fixture,
    leading_coeff,
    leading_coeff_dual,
    marked_point_density,
    region_from_cycle,
    residue_pairing,
    solve,
    wave,
    weight_function,
)
from quadcr.cli import main
from quadcr.quadgraph import Part
from quadcr import documents

import conftest


def report(num, ok, detail):
    line = f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def fixture_set():
    cut_cols = [(4, -1), (5, -1), (4, -1), (1, 1), (2, 1), (1, 1)]
    return [
        ("square 6x6", *generate_fixture("square", 6), 2),
        ("staircase 6x6", *generate_fixture("staircase", 6), 3),
        ("d5 strip 6x6", *generate_fixture("strip", 6, col_specs=cut_cols), 5),
    ]


def test_criterion_1_cr_residual_on_fixtures():
    """Wave-function Cauchy-Riemann residual <= 1e-11 relative, 100 z per face."""
    rng = np.random.default_rng(101)
    worst = 0.0
    for name, q, lab, d in fixture_set():
        data = conftest.random_half_circle_data(rng, d)
        w = weight_function(data, q, lab)
        for idx in range(len(q.faces)):
            face = q.faces[idx]
            nu = w(face[0], face[2])
            for _ in range(100):
                z = conftest.random_point(rng)
                f = {v: wave(data, lab.coords[v], z) for v in face}
                res = cr_residual(q, w, f, idx)
                scale = max(abs(x) for x in f.values()) * (1.0 + abs(nu))
                worst = max(worst, abs(res) / scale)
    report(1, worst <= 1e-11, f"worst relative CR residual {worst:.3e} (<= 1e-11)")


def test_criterion_2_central_symmetry_consequences():
    """W(n;0) = (-1)^|n| exactly; a3 = -1 and a1 + a2 = 0 to 1e-12."""
    rng = np.random.default_rng(102)
    q, lab = generate_fixture("square", 1)  # a single face
    exact_failures = 0
    worst_coeff = 0.0
    for _ in range(1000):
        # centrally symmetric data: paired marked points, no circle needed
        while True:
            try:
                alpha = tuple(
                    complex(*rng.normal(size=2)) * rng.uniform(0.5, 2.0)
                    for _ in range(2)
                )
                data = SpectralData(alpha)
                break
            except Exception:
                continue
        n = conftest.random_lattice_vector(rng, 2, span=6)
        if wave(data, n, 0.0) != (-1) ** (sum(n) % 2):
            exact_failures += 1
        co = face_coefficients(data, q, lab, 0)
        worst_coeff = max(worst_coeff, abs(co.a3 - (-1.0)), abs(co.a1 + co.a2))
    ok = exact_failures == 0 and worst_coeff <= 1e-12
    report(
        2,
        ok,
        f"value-at-zero exact failures {exact_failures}, "
        f"worst coefficient deviation {worst_coeff:.3e} (<= 1e-12)",
    )


def test_criterion_3_reality():
    """Real weights for |alpha_j| = C; reflection identity <= 1e-12 relative."""
    rng = np.random.default_rng(103)
    worst_imag = 0.0
    for name, q, lab, d in fixture_set():
        data = conftest.random_half_circle_data(rng, d, C=float(rng.uniform(0.6, 1.8)))
        w = weight_function(data, q, lab)
        scale = max(abs(v) for v in w.nu.values())
        worst_imag = max(worst_imag, max(abs(v.imag) for v in w.nu.values()) / scale)

    worst_refl = 0.0
    data = conftest.random_half_circle_data(rng, 4, C=1.2)
    for _ in range(1000):
        n = conftest.random_lattice_vector(rng, 4, span=5)
        z = conftest.random_point(rng, 1.2)
        wz = wave(data, n, z)
        wr = wave(data, n, data.reflect(z))
        dev = abs(wr - (-1) ** (sum(n) % 2) * wz.conjugate()) / abs(wz)
        worst_refl = max(worst_refl, dev)
    ok = worst_imag <= 1e-12 and worst_refl <= 1e-12
    report(
        3,
        ok,
        f"worst relative Im(nu) {worst_imag:.3e}, "
        f"worst reflection deviation {worst_refl:.3e} (both <= 1e-12)",
    )


def test_criterion_4_leading_coefficient_signs():
    """r_j r+_j > 0 whenever n_j != 0 (1e4 trials); parity law <= 1e-12."""
    rng = np.random.default_rng(104)
    sign_failures = 0
    worst_parity = 0.0
    for _ in range(10_000):
        d = int(rng.integers(2, 7))
        data = conftest.random_half_circle_data(rng, d, C=float(rng.uniform(0.5, 2.0)))
        n = conftest.random_lattice_vector(rng, d, span=5)
        j = int(rng.integers(1, d + 1))
        r = leading_coeff(data, n, j)
        rp = leading_coeff_dual(data, n, j)
        if n[j - 1] != 0:
            product = r * rp
            if not (abs(product.imag) <= 1e-12 and product.real > 0):
                sign_failures += 1
        bad = abs(r.imag) if sum(n) % 2 == 0 else abs(r.real)
        worst_parity = max(worst_parity, bad / abs(r))
    ok = sign_failures == 0 and worst_parity <= 1e-12
    report(
        4,
        ok,
        f"sign failures {sign_failures}/10000, worst parity deviation "
        f"{worst_parity:.3e} (<= 1e-12)",
    )


def test_criterion_5_residue_identities():
    """Residue pairings and both face sign proportions over 1e3 random faces."""
    rng = np.random.default_rng(105)
    worst = 0.0
    worst_prop = 0.0
    for _ in range(1000):
        d = int(rng.integers(2, 7))
        C = float(rng.uniform(0.5, 2.0))
        data = conftest.random_half_circle_data(rng, d, C=C)
        n1 = conftest.random_lattice_vector(rng, d)
        x, y = (int(v) for v in rng.choice(range(1, d + 1), size=2, replace=False))
        n2 = list(n1); n2[x - 1] += 1
        n3 = list(n1); n3[y - 1] += 1
        n4 = list(n2); n4[y - 1] += 1
        n2, n3, n4 = tuple(n2), tuple(n3), tuple(n4)

        # residue of W(p3) W+(p1) (-dz/2z) at the y-th marked point is -1
        res = residue_pairing(data, n3, n1, data.alpha[y - 1])
        worst = max(worst, abs(res - (-1.0)))

        # four density identities: -1/density = r r+ for the face pairs
        target = -1.0 / marked_point_density(data, y)
        for lhs, rhs in (
            (target, leading_coeff(data, n3, y) * leading_coeff_dual(data, n1, y)),
            (target, leading_coeff(data, n4, y) * leading_coeff_dual(data, n2, y)),
            (
                -1.0 / marked_point_density(data, x),
                leading_coeff(data, n2, x) * leading_coeff_dual(data, n1, x),
            ),
            (
                -1.0 / marked_point_density(data, x),
                leading_coeff(data, n4, x) * leading_coeff_dual(data, n3, x),
            ),
        ):
            worst = max(worst, abs(lhs - rhs) / abs(lhs))

        # sign proportions on the face
        rx = lambda n: leading_coeff(data, n, x)  # noqa: E731
        ry = lambda n: leading_coeff(data, n, y)  # noqa: E731
        for quotient in (
            (rx(n2) / rx(n4)) / (rx(n1) / rx(n3)),
            (ry(n3) / ry(n4)) / (ry(n1) / ry(n2)),
        ):
            worst_prop = max(worst_prop, abs(quotient.imag))
            if quotient.real <= 0:
                worst_prop = float("inf")
    ok = worst <= 1e-10 and worst_prop <= 1e-10
    report(
        5,
        ok,
        f"worst residue-identity deviation {worst:.3e} (<= 1e-10), "
        f"worst proportion imaginary part {worst_prop:.3e}",
    )


def test_criterion_6_sign_criterion_biconditional():
    """Combinatorial verdict == direct sign verdict: fixtures + exhaustive."""
    rng = np.random.default_rng(106)
    disagreements = 0
    cases = 0

    # (a) the named fixtures, the broken staircase, and its d=5 repair
    for kind, d in (("square", 2), ("staircase", 3), ("flipped", 5)):
        q, lab = generate_fixture(kind, 4)
        rep = check_criterion(conftest.random_half_circle_data(rng, d), q, lab)
        cases += 1
        disagreements += not rep.agree
        assert rep.consistent and rep.sign != 0
    qb, labb = conftest.broken_staircase(4)
    rep = check_criterion(conftest.random_half_circle_data(rng, 3), qb, labb)
    cases += 1
    disagreements += not rep.agree
    assert not rep.consistent and rep.sign == 0  # the breaking seam
    q5, lab5 = generate_fixture("flipped", 4)
    rep = check_criterion(conftest.random_half_circle_data(rng, 5), q5, lab5)
    cases += 1
    disagreements += not rep.agree
    assert rep.consistent and rep.sign != 0  # the repair

    # (b) exhaustive orientation/axis assignments on a 2x2-face patch
    col_choices = list(itertools.product((1, 2), (1, -1)))
    row_choices = list(itertools.product((3, 4), (1, -1)))
    patches = []
    for c0, c1 in itertools.product(col_choices, repeat=2):
        for r0, r1 in itertools.product(row_choices, repeat=2):
            patches.append(
                generate_fixture("strip", 2, col_specs=[c0, c1], row_specs=[r0, r1])
            )
    assert len(patches) == 256
    for _ in range(20):
        data = conftest.random_half_circle_data(rng, 4)
        for q, lab in patches:
            cases += 1
            if not check_criterion(data, q, lab).agree:
                disagreements += 1
    report(6, disagreements == 0, f"{disagreements} disagreements in {cases} cases")


def test_criterion_7_dirichlet():
    """Zero boundary, wave reproduction, maximum principle, dense oracle."""
    rng = np.random.default_rng(107)
    q, lab = generate_fixture("square", 8)  # 9x9 lattice
    data = conftest.random_half_circle_data(rng, 2)
    w = weight_function(data, q, lab)

    def vid(i, j):
        return i + 9 * j

    cycle = []
    i, j = 8, 4
    for di, dj in ((-1, 1), (-1, -1), (1, -1), (1, 1)):
        for _ in range(4):
            cycle.append(vid(i, j))
            i, j = i + di, j + dj
    region = region_from_cycle(q, cycle, Side.INNER, w)
    assert len(region.interior) == 9

    f0 = solve(region.with_data({v: 0.0 for v in cycle}))
    zero_worst = max(abs(f0[v]) for v in region.interior)

    z = conftest.random_point(rng)
    fw = solve(region.with_data({v: wave(data, lab.coords[v], z) for v in cycle}))
    wave_worst = max(
        abs(fw[v] - wave(data, lab.coords[v], z))
        / max(abs(wave(data, lab.coords[v], z)), 1.0)
        for v in region.interior
    )

    principle_ok = True
    for _ in range(10):
        bdata = {v: float(rng.normal()) for v in cycle}
        sol = solve(region.with_data(bdata))
        principle_ok &= check_maximum_principle(region.with_data(bdata), sol).ok

    # dense oracle on a 6-interior patch (4x5 rectangle of the rotated grid)
    def uv(u, v):
        return (u + v) + 9 * (u - v)

    us, vs = (2, 3, 4, 5), (-2, -1, 0, 1, 2)
    small_cycle = (
        [uv(u, vs[0]) for u in us]
        + [uv(us[-1], v) for v in vs[1:]]
        + [uv(u, vs[-1]) for u in reversed(us[:-1])]
        + [uv(us[0], v) for v in reversed(vs[1:-1])]
    )
    small = region_from_cycle(q, small_cycle, Side.INNER, w)
    assert len(small.interior) == 6
    bdata = {v: complex(*rng.normal(size=2)) for v in small_cycle}
    fs = solve(small.with_data(bdata))
    idx = {v: i for i, v in enumerate(small.interior)}
    A = np.zeros((6, 6), dtype=complex)
    rhs = np.zeros(6, dtype=complex)
    for v in small.interior:
        for x in q.neighbors(v):
            nu = w(v, x)
            A[idx[v], idx[v]] -= nu
            if x in idx:
                A[idx[v], idx[x]] += nu
            else:
                rhs[idx[v]] -= nu * bdata[x]
    dense = np.linalg.solve(A, rhs)
    dense_worst = max(
        abs(fs[v] - dense[idx[v]]) / max(abs(dense[idx[v]]), 1.0)
        for v in small.interior
    )

    ok = (
        zero_worst <= 1e-10
        and wave_worst <= 1e-9
        and principle_ok
        and dense_worst <= 1e-12
    )
    report(
        7,
        ok,
        f"zero-boundary {zero_worst:.2e} (<=1e-10), wave {wave_worst:.2e} (<=1e-9), "
        f"max principle {'ok' if principle_ok else 'VIOLATED'}, "
        f"dense oracle {dense_worst:.2e} (<=1e-12)",
    )


def test_criterion_8_embedding_oracle():
    """P = sum n_j alpha_j is discrete holomorphic; i nu = diagonal ratio."""
    rng = np.random.default_rng(108)
    worst = 0.0
    for name, q, lab, d in fixture_set():
        data = conftest.random_half_circle_data(rng, d)
        w = weight_function(data, q, lab)
        P = embed_quasicrystal(data, q, lab)
        for idx in range(len(q.faces)):
            face = q.faces[idx]
            if q.parts[face[0]] is not Part.PRIMAL:
                face = face[1:] + face[:1]
            x0, y0, x1, y1 = face
            ratio = (P[y1] - P[y0]) / (P[x1] - P[x0])
            worst = max(worst, abs(ratio - 1j * w(x0, x1)) / abs(ratio))
            res = cr_residual(q, w, P, idx)
            scale = max(abs(P[v]) for v in face) or 1.0
            worst = max(worst, abs(res) / scale)
    report(8, worst <= 1e-12, f"worst embedding deviation {worst:.3e} (<= 1e-12)")


def test_criterion_9_cli_determinism_and_exit_codes(tmp_path):
    """verify twice -> byte-identical JSON; exit codes match the table."""
    g = str(tmp_path / "g.json")
    s = str(tmp_path / "s.json")
    assert main(["generate", "--kind", "staircase", "--size", "4", "--out", g]) == 0
    rng = np.random.default_rng(109)
    documents.save_spectral(s, conftest.random_half_circle_data(rng, 3))

    v1, v2 = str(tmp_path / "v1.json"), str(tmp_path / "v2.json")
    code_pass = main(["verify", "--graph", g, "--spectral", s, "--suite", "all",
                      "--out", v1])
    main(["verify", "--graph", g, "--spectral", s, "--suite", "all", "--out", v2])
    identical = open(v1, "rb").read() == open(v2, "rb").read()

    # fail: broken staircase positivity
    gb = str(tmp_path / "broken.json")
    main(["generate", "--kind", "strip", "--size", "4",
          "--columns", "1:-,2:-,1:+,2:+", "--out", gb])
    code_fail = main(["verify", "--graph", gb, "--spectral", s,
                      "--suite", "positivity", "--out", str(tmp_path / "vf.json")])

    # io error: missing file
    code_io = main(["verify", "--graph", str(tmp_path / "none.json"),
                    "--spectral", s, "--suite", "cr"])

    # degenerate data: nearly collinear directions on the square fixture
    gsq = str(tmp_path / "sq.json")
    main(["generate", "--kind", "square", "--size", "3", "--out", gsq])
    sdeg = tmp_path / "sdeg.json"
    sdeg.write_text(json.dumps({
        "format": "quadcr.spectral/1", "d": 2,
        "alpha": [[math.cos(0.2), math.sin(0.2)],
                  [math.cos(0.2 + 3e-11), math.sin(0.2 + 3e-11)]],
    }))
    code_degenerate = main(["weights", "--graph", gsq, "--spectral", str(sdeg),
                            "--out", str(tmp_path / "w.csv")])

    # singular solve: doctored weights around the single interior vertex
    gs4 = str(tmp_path / "sq4.json")
    main(["generate", "--kind", "square", "--size", "4", "--out", gs4])
    s2 = str(tmp_path / "s2.json")
    documents.save_spectral(s2, conftest.random_half_circle_data(rng, 2))
    wcsv = str(tmp_path / "wsing.csv")
    main(["weights", "--graph", gs4, "--spectral", s2, "--out", wcsv])
    rows = open(wcsv).read().splitlines()
    for face, value in {5: 1.0, 9: 1.0, 10: -1.0, 6: -1.0}.items():
        cells = rows[1 + face].split(",")
        cells[9], cells[10] = repr(value), repr(0.0)
        cells[11], cells[12] = repr(1.0 / value), repr(0.0)
        rows[1 + face] = ",".join(cells)
    open(wcsv, "w").write("\n".join(rows) + "\n")
    b = tmp_path / "b.json"
    documents.save_field(b, {v: 1.0 for v in (14, 18, 22, 16, 10, 6, 2, 8)})
    code_singular = main([
        "solve", "--graph", gs4, "--spectral", s2, "--boundary", str(b),
        "--cycle", "14,18,22,16,10,6,2,8", "--weights", wcsv,
        "--out", str(tmp_path / "sol.json"),
    ])

    codes = (code_pass, code_fail, code_io, code_degenerate, code_singular)
    ok = identical and codes == (0, 1, 2, 3, 4)
    report(
        9,
        ok,
        f"byte-identical={identical}, exit codes (pass,fail,io,degenerate,singular)"
        f"={codes} (expected (0,1,2,3,4))",
    )
