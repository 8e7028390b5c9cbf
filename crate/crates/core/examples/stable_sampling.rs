//! Stable characteristic functions and Chambers–Mallows–Stuck sampling.
//!
//! Draws totally skewed stable variates and compares their empirical
//! characteristic function with the closed form.

use ascl_lab::{stream_rng, Stable, StableParams};
use num_complex::Complex64;
use rand::Rng;

fn main() -> ascl_lab::Result<()> {
    let m = 50_000;
    for alpha in [1.2, 1.5, 2.0] {
        let params = StableParams::new(alpha, 1.0)?;
        let sampler = Stable::new(params)?;
        let mut rng = stream_rng(1, 0);
        let xs: Vec<f64> = (0..m).map(|_| rng.sample(&sampler)).collect();

        println!("alpha = {alpha} ({:?})", params.form());
        println!("  {:>5} {:>22} {:>22}", "t", "phi(t)", "empirical");
        for t in [0.25, 0.5, 1.0, 2.0] {
            let ecf: Complex64 = xs.iter().map(|&x| Complex64::from_polar(1.0, t * x)).sum::<Complex64>() / m as f64;
            let cf = params.cf(t);
            println!(
                "  {t:>5} {:>10.5}{:+.5}i {:>10.5}{:+.5}i",
                cf.re, cf.im, ecf.re, ecf.im
            );
        }
    }
    Ok(())
}
