"""Diagonalization utilities, degeneracy counting, and the scan."""

import csv
import io
import json

import numpy as np
import pytest

from scarlab.elliptic import commensurate_q, jacobi_fraction
from scarlab.errors import DimensionCap, NotTranslationInvariant
from scarlab.hamiltonian import build_xyz_chain
from scarlab.scar import gz_energy
from scarlab.spectra import (degeneracy_at, full_spectrum, is_special_q,
                             scan_degeneracy, translation_sectors)


def test_full_spectrum_matches_numpy():
    H = build_xyz_chain(4, 0.5, 0.7, 1.0, 0.2)
    evals, evecs = full_spectrum(H)
    want = np.linalg.eigvalsh(H.dense())
    assert np.abs(evals - want).max() <= 1e-12
    recon = evecs @ np.diag(evals) @ evecs.conj().T
    assert np.abs(recon - H.dense()).max() <= 1e-10


def test_full_spectrum_dimension_cap():
    H = build_xyz_chain(8, 1.5, 1.0, 1.0, 1.0)   # 4^8 = 65536 > both caps
    with pytest.raises(DimensionCap):
        full_spectrum(H, vectors=True)


def test_degeneracy_counting_and_gap_audit():
    evals = np.array([-1.0, 0.0, 0.0, 0.0, 0.5, 2.0])
    res = degeneracy_at(evals, 0.0, tol=1e-6)
    assert res.count == 3
    assert res.gap == pytest.approx(0.5)
    assert res.resolved
    crowded = degeneracy_at(np.array([0.0, 1e-7, 1.0]), 0.0, tol=1e-6)
    # 1e-7 falls inside tol and the nearest excluded level (1.0) is far
    assert crowded.count == 2 and crowded.resolved
    tight = degeneracy_at(np.array([0.0, 5e-6, 1.0]), 0.0, tol=1e-6)
    assert tight.count == 1 and not tight.resolved


def test_scar_degeneracy_counts():
    kappa = 0.8
    for (N, S, p, want) in [(5, 1.0, 1, 20), (6, 1.0, 1, 24)]:
        q = commensurate_q(p, N, kappa)
        sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
        H = build_xyz_chain(N, S, dn, 1.0, cn)
        evals = full_spectrum(H, vectors=False)
        res = degeneracy_at(evals, gz_energy(N, S, q))
        assert res.count == want and res.resolved


def test_translation_sectors_partition_spectrum():
    N, S = 6, 0.5
    H = build_xyz_chain(N, S, 0.8, 1.0, 0.4)
    sectors = translation_sectors(H, N)
    merged = np.sort(np.concatenate(list(sectors.values())))
    full = full_spectrum(H, vectors=False)
    assert len(merged) == len(full)
    assert np.abs(merged - full).max() <= 1e-10


def test_translation_sectors_reject_open_chain():
    H = build_xyz_chain(5, 0.5, 1.0, 1.0, 0.5, periodic=False)
    with pytest.raises(NotTranslationInvariant):
        translation_sectors(H, 5)


def test_scar_states_split_across_momentum_sectors():
    # the degenerate scar multiplet spreads evenly over all momenta
    N, S, p, kappa = 5, 1.0, 1, 0.8
    q = commensurate_q(p, N, kappa)
    sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
    H = build_xyz_chain(N, S, dn, 1.0, cn)
    E = gz_energy(N, S, q)
    sectors = translation_sectors(H, N)
    counts = {k: degeneracy_at(ev, E).count for k, ev in sectors.items()}
    assert sum(counts.values()) == int(round(4 * N * S))
    assert max(counts.values()) < int(round(4 * N * S))


def test_is_special_q():
    # q = 4pK/N is a multiple of K exactly when N divides 4p
    assert is_special_q(1, 4)
    assert is_special_q(1, 2)
    assert is_special_q(3, 6)
    assert not is_special_q(1, 5)
    assert not is_special_q(1, 6)
    assert not is_special_q(2, 7)


def test_scan_rows_and_csv_format():
    scan = scan_degeneracy([0.5], [4, 5], 0.8, [1])
    text = scan.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["S", "N", "p", "kappa", "E", "count", "expected", "flag"]
    assert len(rows) == 3
    by_n = {int(r[1]): r for r in rows[1:]}
    # N=4 at p=1 is the special commensurability q = K
    assert "special-q" in by_n[4][7]
    assert int(by_n[5][5]) == int(by_n[5][6]) == 10
    assert by_n[5][7] == ""
    # rerun is byte identical
    again = scan_degeneracy([0.5], [4, 5], 0.8, [1]).to_csv()
    assert again == text
    doc = json.loads(scan.sidecar({"seed": 0}))
    assert doc["gap_audit_factor"] == 10.0
    assert doc["config"] == {"seed": 0}


def test_scan_isolates_row_failures():
    # S too large for the dense cap must become an error row, not an exception
    scan = scan_degeneracy([2.5], [8], 0.8, [1])
    assert len(scan.rows) == 1
    assert scan.rows[0].flag.startswith("error:")
