use crate::error::Result;

/// Second-order central-difference Laplacian in chart coordinates. The field
/// value at the stencil centre is computed once and shared by all axes. A
/// field returning an error (for instance a stencil point leaving the chart
/// domain) aborts the evaluation.
pub fn laplacian_fd<F>(field: F, x: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let centre = field(x)?;
    let mut y = x.to_vec();
    let mut acc = 0.0;
    for k in 0..x.len() {
        y[k] = x[k] + h;
        let fp = field(&y)?;
        y[k] = x[k] - h;
        let fm = field(&y)?;
        y[k] = x[k];
        acc += fp - 2.0 * centre + fm;
    }
    Ok(acc / (h * h))
}
