"""From optical knobs to effective many-body parameters, step by step.

Walks a single operating point (the default configuration) through the full
mapping: effective mass, lattice depth, Lieb-Liniger gamma, Luttinger K, and
the resulting phase classification.
"""

import dataclasses

from polariton_phases import many_body, optics


def describe(cfg):
    vc = optics.validate_config(cfg)
    ep = optics.effective_params(vc)
    gam = optics.lieb_liniger_gamma(vc)
    depth = optics.lattice_depth_ratio(vc)
    point = many_body.make_point(gam.magnitude, depth,
                                 sign_warning=gam.negative)
    print(f"  Delta_p/Gamma = {cfg.delta_p:g}, Omega/Gamma = {cfg.omega:g}")
    print(f"  group velocity v_g       = {ep.v_g:.4g} m/s")
    print(f"  effective mass (Re, Im)  = ({ep.mass.real:.4g}, "
          f"{ep.mass.imag:.4g})")
    print(f"  loss rate kappa          = {ep.kappa:.4g} 1/s")
    print(f"  lattice depth V1/E_R     = {depth:.4g}")
    print(f"  Lieb-Liniger |gamma|     = {gam.magnitude:.4g}"
          + ("  (negative sign)" if gam.negative else ""))
    print(f"  Luttinger K              = {point.k_luttinger:.4g}")
    print(f"  U/J                      = {point.u_over_j:.4g}")
    print(f"  phase                    = {point.phase.value}")
    print()


def main():
    base = optics.OpticalConfig()
    print("Baseline operating point:")
    describe(base)

    print("Weaker control field (deeper lattice, stronger correlations):")
    describe(dataclasses.replace(base, omega=0.7))

    print("Small probe detuning (strongly interacting gas):")
    describe(dataclasses.replace(base, delta_p=2.0))


if __name__ == "__main__":
    main()
