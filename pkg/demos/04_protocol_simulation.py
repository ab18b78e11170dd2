#!/usr/bin/env python3
"""Desk-scale protocol simulation against the one-shot bounds.

Privacy amplification: enumerate every hash table on small n-fold sources
and compare the best achievable divergence per symbol with the exponent
floor (the one-shot converse holds per hash, so the floor is hard; the
shrinking gap as n grows is recorded, not asserted). Soft covering: exact
codebook-ensemble divergences versus the Monte-Carlo estimator and the
one-shot converse.
"""

from renyinfo import pa_exponent
from renyinfo.dist import JointPmf, condition_on_x, iid_power
from renyinfo.protocol import (
    check_one_shot_sc_bound,
    pa_min_divergence_exhaustive,
    pa_universal_family_divergence,
    sc_expected_divergence_exact,
    sc_expected_divergence_mc,
)

p = 0.1
joint = JointPmf(("0", "1"), ("0", "1"),
                 [[(1 - p) / 2, p / 2], [p / 2, (1 - p) / 2]])

print("== privacy amplification, exhaustive hash search (M = 2) ==")
print("   n   R_eff   best D/n    exponent floor E(R_eff)   gap")
for beta in (0.5, 2.0):
    print(f"  beta = {beta}:")
    for n in (1, 2, 3):
        jn = iid_power(joint, n) if n > 1 else joint
        val, best = pa_min_divergence_exhaustive(jn, 2, beta)
        r_eff = 1.0 / n
        floor = pa_exponent(joint, beta, r_eff).value
        per_symbol = val / n
        assert per_symbol >= floor - 1e-10  # one-shot converse, hard
        print(f"   {n}   {r_eff:.3f}   {per_symbol:.6f}    {floor:.6f}"
              f"                 {per_symbol - floor:.6f}")
print("  (the per-symbol gap to the floor is the finite-n overhead; it is")
print("   recorded here, the hard assertion is only the floor itself)")
print()

print("== privacy amplification, bit-affine 2-universal family ==")
print("  beta = 2, rate 1 bit/symbol; best sampled hash vs ensemble mean:")
for n in (2, 4, 6):
    jn = iid_power(joint, n)
    rec = pa_universal_family_divergence(jn, 2**n, 2.0, seed=11, n_samples=64, n=n)
    floor = pa_exponent(joint, 2.0, 1.0).value
    print(f"   n={n}: best/n = {rec.value_bits / n:.6f}  floor = {floor:.6f}  ({rec.note})")
print()

print("== soft covering, exact ensemble vs Monte Carlo ==")
px, pyx = condition_on_x(joint)
for beta in (0.5, 2.0):
    for m in (1, 2, 4):
        exact = sc_expected_divergence_exact(px, pyx, 1, m, beta)
        mc = sc_expected_divergence_mc(px, pyx, 1, m, beta, n_samples=4000, seed=3)
        chk = check_one_shot_sc_bound(px, pyx, 1, m, beta, exact)
        print(f"  beta={beta} M={m}: exact = {exact.value_bits:.6f}  "
              f"mc = {mc.value_bits:.6f} +/- {mc.stderr:.1e}  "
              f"one-shot bound = {chk.bound:.6f} (margin {chk.margin:+.2e})")
        assert chk.passed
print()
print("M = 1 reproduces the order-beta mutual information exactly, so the")
print("one-shot bound is met with equality there; larger codebooks shrink")
print("the divergence toward the bound's positive part.")
