"""Acceptance gate: one test per release criterion, one printed verdict each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
"""

import json
import time

import numpy as np
import pytest

from fftshield.abft import DetectionConfig, Scheme, make_encoding, run_protected
from fftshield.fault_lab import (
    BitFlipInjector,
    CampaignConfig,
    FaultSpec,
    propagation_footprint,
    records_csv,
    roc_csv,
    run_campaign,
)
from fftshield.fft_core import build_twiddles, dft_reference, fft_execute, make_plan
from fftshield.planner import (
    MAX_EXP,
    ONE_STAGE_MAX,
    TWO_STAGE_MAX,
    emit_descriptor,
    render_descriptor,
    select_parameters,
    stage_count,
)

from conftest import random_batch, rel_l2

ORACLE_TOL = {"fp32": 1e-5, "fp64": 1e-10}


def verdict(name, ok):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}")
    assert ok, name


class TestAcceptance:
    def test_01_oracle_equivalence(self):
        start = time.monotonic()
        rng = np.random.default_rng(2024)
        ok = True
        for precision, max_exp, dtype in (
            ("fp32", 12, np.complex64),
            ("fp64", 14, np.complex128),
        ):
            for e in range(1, max_exp + 1):
                n = 2**e
                plan = make_plan(n, precision)
                tw = build_twiddles(plan)
                x = random_batch(rng, n, dtype)
                ok &= rel_l2(fft_execute(plan, tw, x), dft_reference(x)) <= ORACLE_TOL[precision]
        for e in range(1, 21):
            n = 2**e
            plan = make_plan(n, "fp64")
            tw = build_twiddles(plan)
            x = random_batch(rng, n)
            back = fft_execute(plan, tw, fft_execute(plan, tw, x), inverse=True)
            ok &= rel_l2(back, x) <= ORACLE_TOL["fp64"]
        elapsed = time.monotonic() - start
        ok &= elapsed < 120
        verdict(f"oracle equivalence + round trip ({elapsed:.1f}s)", ok)

    def test_02_plan_fixtures(self):
        fixtures = {
            2**10: ((1024,), (8,), 1),
            2**17: ((256, 512), (16, 16), 8),
            2**23: ((256, 128, 256), (16, 16, 16), 16),
        }
        ok = True
        for n, (dims, radices, bs) in fixtures.items():
            p = select_parameters(n, batch=bs)
            ok &= p.dims == dims and p.radices == radices and p.bs == bs
        for e in range(1, MAX_EXP + 1):
            n = 2**e
            expected = 1 if n <= ONE_STAGE_MAX else 2 if n <= TWO_STAGE_MAX else 3
            p = select_parameters(n)
            ok &= stage_count(n) == expected
            ok &= len(p.dims) == expected and int(np.prod(p.dims)) == n
        verdict("plan fixtures + 1/2/3-stage rule over 2^1..2^29", ok)

    def test_03_campaign_protocol(self):
        start = time.monotonic()
        base = run_campaign(CampaignConfig(runs=2000, inject_fraction=0.5,
                                           n=2**10, batch=16, precision="fp32"))
        ok = base.injected_count == 2000 // 2
        det = [p.detection_rate for p in base.roc]
        far = [p.false_alarm_rate for p in base.roc]
        ok &= det == sorted(det, reverse=True) and far == sorted(far, reverse=True)
        exponent = run_campaign(CampaignConfig(runs=2000, inject_fraction=0.5,
                                               n=2**10, batch=16, precision="fp32",
                                               bits=tuple(range(25, 31))))
        ok &= any(p.detection_rate == 1.0 and p.false_alarm_rate == 0.0
                  for p in exponent.roc)
        elapsed = time.monotonic() - start
        ok &= elapsed < 180
        verdict(f"2000-run campaign protocol + exponent-bit ROC ({elapsed:.1f}s)", ok)

    def test_04_correction_soundness(self):
        plan = make_plan(256, "fp32", batch=8)
        tw = build_twiddles(plan)
        cfg = DetectionConfig(delta=1e-4)
        tol = 10 * ORACLE_TOL["fp32"]
        total = 500
        detected = corrected = recompute_two = recompute_one = 0
        ok = True
        for i in range(total):
            rng = np.random.default_rng([77, i])
            x = random_batch(rng, (8, 256), np.complex64)
            spec = FaultSpec(
                run_id=i,
                signal_idx=int(rng.integers(8)),
                element_idx=int(rng.integers(256)),
                component="re" if rng.integers(2) == 0 else "im",
                bit=int(rng.integers(25, 31)),
            )
            clean, _, _ = run_protected(plan, tw, x, Scheme.NONE, cfg)
            out, rep, _ = run_protected(plan, tw, x, Scheme.TWO_SIDED_GROUP, cfg,
                                        injector=BitFlipInjector(spec))
            recompute_two += rep.recompute_count
            if rep.flagged:
                detected += 1
                if rel_l2(out, clean) <= tol:
                    corrected += 1
            _, rep_one, _ = run_protected(plan, tw, x, Scheme.ONE_SIDED, cfg,
                                          injector=BitFlipInjector(spec))
            recompute_one += rep_one.recompute_count
        ok &= detected == total  # top exponent bits are always detectable
        ok &= corrected == detected
        ok &= recompute_two == 0
        ok &= recompute_one == detected
        verdict(
            f"correction soundness ({corrected}/{detected} corrected, "
            f"recompute two-sided={recompute_two}, one-sided={recompute_one})",
            ok,
        )

    def test_05_fusion_contract(self):
        rng = np.random.default_rng(5)
        cfg = DetectionConfig(delta=1e-4)
        ok = True
        matrix = [(2**4, "fp32"), (2**8, "fp32"), (2**10, "fp32"),
                  (2**13, "fp64"), (2**14, "fp64"), (2**17, "fp32")]
        for n, precision in matrix:
            plan = make_plan(n, precision, batch=16)
            tw = build_twiddles(plan)
            x = random_batch(rng, (16, n), plan.dtype)
            _, _, c_none = run_protected(plan, tw, x, Scheme.NONE, cfg)
            _, _, c_two = run_protected(plan, tw, x, Scheme.TWO_SIDED_GROUP, cfg)
            groups = 16 // plan.bs
            ok &= c_two.total == c_none.total == 2 * len(plan.stages) * groups
        verdict("fusion contract: protected pass count equals unprotected", ok)

    def test_06_propagation_law(self):
        ok = True
        for n in (8, 64, 1024):
            stages = int(np.log2(n))
            for s in range(stages + 1):
                ok &= propagation_footprint(n, s) == 2 ** (stages - s)
        verdict("propagation footprint = 2^(remaining stages)", ok)

    def test_07_encoding_correctness(self):
        ok = True
        for kind in ("wang", "ones"):
            for e in range(1, 11):
                n = 2**e
                enc = make_encoding(kind, n)
                k = np.arange(n)
                brute = enc.values @ np.exp(-2j * np.pi * np.outer(k, k) / n)
                scale = max(np.abs(brute).max(), 1.0)
                ok &= np.abs(enc.etw - brute).max() <= 1e-12 * scale
        rng = np.random.default_rng(7)
        for n in (4, 16, 64, 256):
            enc = make_encoding("wang", n)
            plan = make_plan(n, "fp64")
            tw = build_twiddles(plan)
            x = random_batch(rng, (100, n))
            y = fft_execute(plan, tw, x)
            c_in = x @ enc.etw
            c_out = y @ enc.values
            floor = np.maximum(np.abs(c_in), np.abs(x).sum(axis=1) * 1e-12)
            ok &= bool((np.abs(c_in - c_out) <= 1e-10 * np.maximum(floor, 1.0)).all())
        verdict("encoding correctness + checksum identity", ok)

    def test_08_determinism(self, tmp_path):
        cfg = lambda: CampaignConfig(runs=60, inject_fraction=0.5, n=256,
                                     batch=8, precision="fp32", seed=11)
        a, b = run_campaign(cfg()), run_campaign(cfg())
        ok = roc_csv(a).encode() == roc_csv(b).encode()
        ok &= records_csv(a).encode() == records_csv(b).encode()
        render = lambda: render_descriptor(
            emit_descriptor(select_parameters(2**17, 8), "two_sided")
        )
        ok &= render().encode() == render().encode()
        verdict("determinism: byte-identical CSVs and descriptor JSON", ok)
