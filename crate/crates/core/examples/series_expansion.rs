//! Power-series coefficients of the line denominator and how fast the
//! truncated series converges to the hyperbolic form.

use icm::delay::{abc_coefficients, series_coefficients};
use icm::exact::denominator;
use icm::params::Termination;
use num_complex::Complex64;

fn main() -> icm::Result<()> {
    let term = Termination::resistive(100.0, 500.0)?;
    let abc = abc_coefficients(1e3, 1e-12, &term)?;
    println!("a = {}, b = {}, c = {}", abc.a, abc.b, abc.c);

    let u = 1.0;
    let exact = denominator(&abc, Complex64::new(u, 0.0)).re;
    for order in [1, 2, 4, 8, 12] {
        let s = series_coefficients(&abc, order)?;
        let approx = s.eval(u);
        println!("order {order:>2}: f(1) = {approx:.15}  rel. error {:.2e}", ((approx - exact) / exact).abs());
    }
    let s = series_coefficients(&abc, 4)?;
    for (m, k) in s.coefficients.iter().enumerate() {
        println!("k{m} = {k:e}");
    }
    Ok(())
}
