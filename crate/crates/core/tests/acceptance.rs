//! One verdict line per acceptance criterion. Tolerances live in `thetatqft::verify::tol`.

use std::process::ExitCode;
use thetatqft::verify::{run_all, tol};

const SEED: u64 = 2024;

fn main() -> ExitCode {
    println!(
        "tolerances: fourier modulus {:e}, quasi-periodicity {:e}, gram {:e}, hermitian {:e}, group law {:e}",
        tol::FOURIER_MODULUS,
        tol::QUASI_PERIODICITY,
        tol::GRAM,
        tol::HERMITIAN,
        tol::GROUP_LAW
    );
    let reports = run_all(SEED);
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
