//! Complex numbers on the wire as `{"re": .., "im": ..}` objects.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord<T: Default> {
    pub re: T,
    #[serde(default)]
    pub im: T,
}

impl<T: Default> From<Complex<T>> for ComplexRecord<T> {
    fn from(c: Complex<T>) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl<T: Default> From<ComplexRecord<T>> for Complex<T> {
    fn from(r: ComplexRecord<T>) -> Self {
        Complex::new(r.re, r.im)
    }
}

/// `#[serde(with = "crate::wire::complex")]`
pub mod complex {
    use super::*;

    pub fn serialize<T: Serialize + Clone + Default, S: Serializer>(
        c: &Complex<T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        ComplexRecord::from(c.clone()).serialize(s)
    }

    pub fn deserialize<'de, T: Deserialize<'de> + Default, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Complex<T>, D::Error> {
        ComplexRecord::deserialize(d).map(Into::into)
    }
}
