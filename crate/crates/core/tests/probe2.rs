use pitman_core::distributions::DistributionSpec;
use pitman_core::orderstats::pc_order_stat;

#[test]
fn probe() {
    let logistic = DistributionSpec::logistic(0.0, 1.0).unwrap();
    let pairs = vec![
        ("uniform", DistributionSpec::uniform(0.0, 1.0).unwrap(), DistributionSpec::uniform(0.0, 1.0).unwrap()),
        ("normal", DistributionSpec::normal(0.0, 1.0).unwrap(), DistributionSpec::normal(0.0, 2.0).unwrap()),
        ("logistic", logistic.clone(), DistributionSpec::logistic(0.0, 1.5).unwrap()),
        ("laplace", DistributionSpec::laplace(0.0, 1.0).unwrap(), DistributionSpec::laplace(0.0, 0.8).unwrap()),
        ("bg", DistributionSpec::beta_generated(1.0, DistributionSpec::normal(0.0, 1.0).unwrap()).unwrap(), DistributionSpec::normal(0.0, 1.0).unwrap()),
        ("mix", DistributionSpec::mixture(vec![
            DistributionSpec::beta_generated(1.0, logistic.clone()).unwrap(),
            DistributionSpec::beta_generated(2.0, logistic.clone()).unwrap()], vec![0.4, 0.6]).unwrap(),
         logistic.clone()),
    ];
    for (name, x, y) in pairs {
        for n in [2usize, 5, 12] {
            for i in 1..=n {
                let r = std::panic::catch_unwind(|| pc_order_stat(i, n, &x, &y));
                match r {
                    Ok(Ok(v)) => print!("{name} n={n} i={i}: {v:.6}  "),
                    Ok(Err(e)) => println!("\n{name} n={n} i={i}: ERR {e}"),
                    Err(_) => println!("\n{name} n={n} i={i}: PANIC"),
                }
            }
            println!();
        }
    }
}
