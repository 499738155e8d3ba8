#!/usr/bin/env python3
"""High-precision reference evaluation of the decoherence closed forms.

Evaluates every derived scalar (transition energy, wavelength, radiative
rate, amplitude/population decay rates, characteristic time) with mpmath
at 50 significant digits, checks that the two algebraic routes to the
characteristic time agree, and prints f64-rounded golden values ready to
be frozen into the Rust test suites.

Run:  python3 scripts/golden_reference.py
"""

from mpmath import mp, mpf, pi

mp.dps = 50

# Pinned constants table (must match crates/core/src/constants.rs).
HBAR = mpf("6.582119569e-16")      # eV s
HBAR_C = mpf("1973.269804")        # eV Angstrom
HBAR2_OVER_2M0 = mpf("3.80998")    # eV Angstrom^2
C = HBAR_C / HBAR                  # Angstrom / s (derived, not independent)

MATERIALS = {
    "CdS": dict(
        e_gap=mpf("2.583"), e_bind=mpf("0.030"), a_bohr=mpf("30"),
        dipole_ratio=mpf("0.00025"), epsilon=mpf("8"),
        m_e=mpf("0.25"), m_h=mpf("1.6"),
    ),
    "GaAs": dict(
        e_gap=mpf("1.52"), e_bind=mpf("0.005"), a_bohr=mpf("100"),
        dipole_ratio=mpf("0.000025"), epsilon=mpf("12.53"),
        m_e=mpf("0.0665"), m_h=mpf("0.45"),
    ),
}


def mu_sq(mat):
    """Squared interband dipole moment, eV Angstrom^3."""
    return mat["dipole_ratio"] * mat["epsilon"] * mat["a_bohr"] ** 3


def hbar_omega(mat, r0):
    """Transition energy in eV including the confinement term."""
    m = mat["m_e"] + mat["m_h"]
    return mat["e_gap"] - mat["e_bind"] + HBAR2_OVER_2M0 * pi**2 / (m * r0**2)


def wavelength(mat, r0):
    return 2 * pi * HBAR_C / hbar_omega(mat, r0)


def gamma_s(mat, r0):
    omega = hbar_omega(mat, r0) / HBAR
    return 4 * mu_sq(mat) * omega**3 / (3 * HBAR * (2 * pi * C) ** 3)


def gamma_amp(mat, r0):
    return 32 * pi * (r0 / mat["a_bohr"]) ** 3 * gamma_s(mat, r0)


def tau_via_rate(mat, r0):
    return 1 / gamma_amp(mat, r0)


def tau_literal(mat, r0):
    """Characteristic time evaluated from the fully expanded closed form.

    Independent algebraic route: the center-of-mass mass appears as an
    explicit mass (eV s^2/Angstrom^2) and the bracket keeps the raw
    hbar^2 pi^2 term, exercising different groupings than tau_via_rate.
    """
    m = mat["m_e"] + mat["m_h"]
    m0 = HBAR**2 / (2 * HBAR2_OVER_2M0)
    mass = m * m0
    num = 3 * HBAR**4 * pi**2 * C**3 * mat["a_bohr"] ** 3 * mass**3 * r0**3
    den = 2 * mu_sq(mat) * (
        2 * mass * r0**2 * (mat["e_gap"] - mat["e_bind"]) + HBAR**2 * pi**2
    ) ** 3
    return num / den


def f64(x):
    """Round an mpf to the nearest f64 and print with full precision."""
    return repr(float(x))


def main():
    print("# constants")
    print(f"c_angstrom_per_s = {f64(C)}")
    print()

    worst = mpf(0)
    for name, mat in MATERIALS.items():
        for r0 in [mpf(r) for r in range(200, 1001, 25)]:
            a = tau_via_rate(mat, r0)
            b = tau_literal(mat, r0)
            worst = max(worst, abs(a - b) / a)
    print(f"# max relative disagreement between tau routes: {float(worst):.3e}")
    assert worst < mpf("1e-40"), "tau routes disagree"
    print()

    for name, mat in MATERIALS.items():
        for r0 in [mpf("300"), mpf("800")]:
            print(f"# {name}, R0 = {r0} Angstrom")
            print(f"mu_sq          = {f64(mu_sq(mat))}")
            print(f"hbar_omega_eV  = {f64(hbar_omega(mat, r0))}")
            print(f"lambda_angstrom= {f64(wavelength(mat, r0))}")
            print(f"gamma_s        = {f64(gamma_s(mat, r0))}")
            print(f"gamma_amp      = {f64(gamma_amp(mat, r0))}")
            print(f"gamma_pop      = {f64(2 * gamma_amp(mat, r0))}")
            print(f"tau_s          = {f64(tau_literal(mat, r0))}")
            print()

    print("# sweep goldens: tau_s at R0 = 200..500 step 50 (7 points)")
    for name, mat in MATERIALS.items():
        vals = [f64(tau_literal(mat, mpf(r))) for r in range(200, 501, 50)]
        print(f"const GOLDEN_TAU_{name.upper()}: [f64; 7] = [")
        for v in vals:
            print(f"    {v},")
        print("];")
    print()

    print("# cubic-scaling check: tau(1000)/tau(500) for CdS")
    ratio = tau_literal(MATERIALS["CdS"], mpf("1000")) / tau_literal(
        MATERIALS["CdS"], mpf("500")
    )
    print(f"ratio = {f64(ratio)}")


if __name__ == "__main__":
    main()
