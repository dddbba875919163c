//! Natural frequencies, end slopes and modal constants of the flexible link.
//!
//!     cargo run --example beam_modes

use flexsim::flexbeam::{shape_functions, ModalBasis, ModalConstants};
use flexsim::params::default_params;

fn main() -> flexsim::error::Result<()> {
    let p = default_params();
    let basis = ModalBasis::new(5, p.l2, p.rho2, p.ei)?;
    let exact = ModalConstants::closed_form(&basis);
    let quad = ModalConstants::by_quadrature(&basis, p.n_quad);

    println!(" n    omega (rad/s)   v'(l2)        G_n          H_n          Q_n   |closed-quad|");
    for n in 1..=basis.n_modes {
        let i = n - 1;
        let diff = (exact.g_mass[i] - quad.g_mass[i])
            .abs()
            .max((exact.h_mass[i] - quad.h_mass[i]).abs())
            .max((exact.q_mass[i] - quad.q_mass[i]).abs());
        println!(
            "{n:2} {:16.4} {:9.4} {:12.6} {:12.6} {:12.6}   {diff:.1e}",
            basis.natural_frequency(n),
            basis.eigen_slope(n, p.l2)?,
            exact.g_mass[i],
            exact.h_mass[i],
            exact.q_mass[i]
        );
    }

    let s = shape_functions(p.l2);
    println!(
        "\nh(l2/2) = {:.8}, q''(l2) = {}, h''(0) = {}",
        s.h.eval(p.l2 / 2.0),
        s.q.d2(p.l2),
        s.h.d2(0.0)
    );
    Ok(())
}
