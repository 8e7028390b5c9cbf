//! Streaming logarithmic averages along one path, split into two halves and
//! merged, compared with the limit CDF `G_1 = N(0, 2)` of `s_n(1)`.

use ascl_lab::levy_oracle::NormalCdf;
use ascl_lab::{stream_rng, Cdf, InputLaw, LogAvgAccumulator, Trajectory};

fn main() -> ascl_lab::Result<()> {
    let law = InputLaw::shifted_exponential(1.0, 0.0)?;
    let a = law.norming()?;
    let n_max = 200_000;
    let traj = Trajectory::new(law.sample(n_max, &mut stream_rng(6, 0))?, law.mean())?;

    let x: Vec<f64> = (-8..=8).map(|i| 0.5 * i as f64).collect();
    let t = vec![0.5, 1.0];
    let half = n_max / 2;
    let mut first = LogAvgAccumulator::new(x.clone(), t.clone())?;
    let mut second = LogAvgAccumulator::starting_at(x.clone(), t.clone(), half + 1)?;
    for n in 1..=n_max {
        let values: Vec<f64> = t.iter().map(|&tt| traj.s_value(a.value(n), n, tt)).collect::<Result<_, _>>()?;
        let acc = if n <= half { &mut first } else { &mut second };
        acc.accumulate(n, &values)?;
    }
    let acc = first.merge(&second)?;

    let limit = NormalCdf { mean: 0.0, sd: 2f64.sqrt() };
    println!("N = {}, sum of 1/n = {:.4}", acc.n(), acc.weights());
    println!("{:>6} {:>10} {:>10}", "x", "estimate", "G_1(x)");
    for (xi, &xx) in x.iter().enumerate() {
        println!("{xx:>6.2} {:>10.4} {:>10.4}", acc.query(1, xi)?, limit.cdf(xx));
    }
    println!("grid KS at t = 1: {:.4}", acc.to_cdf(1)?.ks_on_grid(&limit));
    Ok(())
}
