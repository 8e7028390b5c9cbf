//! Growth and first-moment checks on norming sequences.

use ascl_lab::harness::{check_growth_condition, check_moment_condition, log_spaced};
use ascl_lab::{stream_rng, InputLaw, NormingSequence};

fn main() -> ascl_lab::Result<()> {
    for (seq, gamma) in [
        (NormingSequence::power_law(1.5, 1.0)?, 1.0 / 1.5),
        (NormingSequence::sqrt_n(1.0)?, 0.5),
        (NormingSequence::sqrt_n(1.0)?, 0.6),
    ] {
        let r = check_growth_condition(&seq, gamma, 1, 100_000, 20)?;
        println!(
            "{seq:?}, gamma = {gamma:.3}: margin {:.4} -> {}",
            r.margin,
            if r.pass { "pass" } else { "fail" }
        );
    }

    let law = InputLaw::shifted_exponential(1.0, 0.0)?;
    let grid = log_spaced(1, 100_000, 6);
    let r = check_moment_condition(&law, &law.norming()?, 0.25, 0.5, &grid, 500, &mut stream_rng(7, 0))?;
    println!("\nE|S_n - n mu| / d_n against exp(0.25 (ln n)^0.5):");
    for row in &r.rows {
        println!("  n = {:>6}: {:.4} / {:.4} = {:.4}", row.n, row.mean_abs, row.envelope, row.ratio);
    }
    println!("max ratio {:.4}, bound {:.4}", r.max_ratio, r.slack * r.fitted_constant);
    Ok(())
}
