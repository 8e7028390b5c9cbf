//! One trajectory of positive inputs and the functionals built on it:
//! the centered sum `s_n(t)`, the product `π_n(t)`, and the gap between
//! `log π_n` and its linearization.

use ascl_lab::{stream_rng, InputLaw, Trajectory};

fn main() -> ascl_lab::Result<()> {
    let law = InputLaw::lognormal(0.0, 1.0)?;
    let a = law.norming()?;
    let n_max = 100_000;
    let traj = Trajectory::new(law.sample(n_max, &mut stream_rng(5, 0))?, law.mean())?;

    println!("mu = {:.6}, a_n = {a:?}", law.mean());
    println!("{:>7} {:>10} {:>10} {:>10} {:>12}", "n", "s_n(1)", "pi_n(1/2)", "pi_n(1)", "log gap");
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let a_n = a.value(n);
        println!(
            "{n:>7} {:>10.4} {:>10.4} {:>10.4} {:>12.3e}",
            traj.s_value(a_n, n, 1.0)?,
            traj.pi_value(a_n, n, 0.5)?,
            traj.pi_value(a_n, n, 1.0)?,
            traj.lemma1_discrepancy(a_n, n, 1.0)?
        );
    }

    // Σ_k (S_k/k − μ) rewritten with harmonic weights b_{k,n} = Σ_{j=k}^n 1/j.
    let n = 1_000;
    println!(
        "\nP_{n} = {:.10}, weighted form = {:.10}",
        traj.centered_prefix(n),
        traj.weighted_representation(n)?
    );
    Ok(())
}
