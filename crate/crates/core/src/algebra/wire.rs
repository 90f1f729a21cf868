//! JSON term records: `{re, im, k, m}` for log-Laurent terms and
//! `{re, im, kz, kzeta}` for bivariate terms.

use num_complex::Complex;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{BivariateLaurentExpr, LogLaurentExpr, LogLaurentTerm};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord<T> {
    pub re: T,
    pub im: T,
    pub k: i32,
    #[serde(default)]
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivariateTermRecord<T> {
    pub re: T,
    pub im: T,
    pub kz: i32,
    pub kzeta: i32,
}

impl<T: Scalar + Serialize> Serialize for LogLaurentExpr<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let recs: Vec<TermRecord<T>> = self
            .terms()
            .map(|t| TermRecord {
                re: t.coeff.re,
                im: t.coeff.im,
                k: t.power,
                m: t.logpow,
            })
            .collect();
        recs.serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for LogLaurentExpr<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<TermRecord<T>>::deserialize(d)?;
        Ok(LogLaurentExpr::from_terms(recs.into_iter().map(|r| {
            LogLaurentTerm {
                coeff: Complex::new(r.re, r.im),
                power: r.k,
                logpow: r.m,
            }
        })))
    }
}

impl<T: Scalar + Serialize> Serialize for BivariateLaurentExpr<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let recs: Vec<BivariateTermRecord<T>> = self
            .terms()
            .map(|(c, kz, kzeta)| BivariateTermRecord {
                re: c.re,
                im: c.im,
                kz,
                kzeta,
            })
            .collect();
        recs.serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for BivariateLaurentExpr<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<BivariateTermRecord<T>>::deserialize(d)?;
        Ok(BivariateLaurentExpr::from_terms(
            recs.into_iter().map(|r| (Complex::new(r.re, r.im), r.kz, r.kzeta)),
        ))
    }
}
