//! Werner states, their two-source optical construction and the
//! partial-transpose separability test.
//!
//! cargo run --release --example werner_entanglement

use tomofid::dv::{bell_state, min_ppt_eigenvalue, mixing_weights, uhlmann_fidelity, werner, werner_from_mixing, Bell};
use tomofid::linalg::max_abs_diff;

fn main() -> tomofid::Result<()> {
    println!("     p     e_m     (1-3p)/4  F(Psi-, w)  f1     f2     lambda  |mixing - werner|");
    for p in [0.0, 0.2, 1.0 / 3.0, 0.44, 0.7, 1.0] {
        let w = werner(p)?;
        let (f1, f2, lambda) = mixing_weights(p)?;
        let diff = max_abs_diff(werner_from_mixing(p)?.matrix(), w.matrix());
        println!(
            "  {p:.3}  {:+.4}  {:+.4}   {:.4}      {f1:.3}  {f2:.3}  {lambda:.3}   {diff:.1e}",
            min_ppt_eigenvalue(&w),
            (1.0 - 3.0 * p) / 4.0,
            uhlmann_fidelity(&bell_state(Bell::PsiMinus), &w)?,
        );
    }
    let f = uhlmann_fidelity(&werner(0.28)?, &werner(0.44)?)?;
    println!("F(w(0.28), w(0.44)) = {f:.4}: a separable and an entangled state that are hard to tell apart");
    Ok(())
}
