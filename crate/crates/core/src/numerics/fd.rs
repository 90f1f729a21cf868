use crate::error::Result;
use crate::scalar::RealScalar;

/// Five-point Laplacian `(f(x±h, y) + f(x, y±h) − 4f(x, y))/h²`.
pub fn fd_laplacian<T, F>(field: F, x: T, y: T, h: T) -> Result<T>
where
    T: RealScalar,
    F: Fn(T, T) -> Result<T>,
{
    let center = field(x, y)?;
    let sum = field(x + h, y)? + field(x - h, y)? + field(x, y + h)? + field(x, y - h)?;
    Ok((sum - center * T::lit(4.0)) / (h * h))
}
