//! The limit law of `∫_0^t L(s)/s ds` two ways: by integrating simulated
//! Lévy paths, and by the closed form `(tΓ(α+1))^(1/α) L_α`.

use ascl_lab::{ks_two_sample, stream_rng, LevyPath, LimitOracle};

fn main() -> ascl_lab::Result<()> {
    let path = LevyPath::simulate(1.5, 1_000, &mut stream_rng(3, 0))?;
    println!(
        "one path, alpha = 1.5: L(1) = {:.4}, integral to 1/2 = {:.4}, to 1 = {:.4}",
        path.terminal(),
        path.log_integral(0.5)?,
        path.log_integral(1.0)?
    );

    let samples = 5_000;
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        let oracle = LimitOracle::new(alpha)?.with_path_steps(2_000)?;
        let mut rng = stream_rng(4, alpha.to_bits());
        for t in [0.5, 1.0] {
            let by_paths = oracle.path_integrated(&[t], samples, &mut rng)?.remove(0);
            let closed = oracle.closed_form(t, samples, &mut rng)?;
            println!(
                "alpha = {alpha}, t = {t}: scale {:.4}, path median {:+.4}, closed median {:+.4}, KS {:.4}",
                oracle.closed_form_scale(t),
                by_paths.median(),
                closed.median(),
                ks_two_sample(&by_paths, &closed)
            );
        }
    }
    Ok(())
}
