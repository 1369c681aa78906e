use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::form::{Bidegree, Form, MAX_DIM};

/// Structure equations of a Lie algebra with an integrable invariant complex
/// structure: the differentials `dα_i` of the `n` generators of type (1,0).
///
/// `dᾱ_i` is never stored; it is the conjugate of `dα_i`. Each `dα_i` has only
/// (2,0) and (1,1) components, which is how integrability is encoded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    n: usize,
    d_generators: Vec<Form>,
}

impl AlgebraSpec {
    pub fn new(name: impl Into<String>, n: usize, d_generators: Vec<Form>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        if d_generators.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: d_generators.len() });
        }
        let allowed = [Bidegree::new(2, 0), Bidegree::new(1, 1)];
        let mut gens = Vec::with_capacity(n);
        for (k, f) in d_generators.into_iter().enumerate() {
            if f.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: f.dim() });
            }
            if let Some(bad) = f.bidegrees().into_iter().find(|b| !allowed.contains(b)) {
                return Err(Error::BadGeneratorShape { generator: k + 1, found: bad.to_string() });
            }
            if let Some((b, _)) = f.terms().find(|(b, _)| b.max_index() > n) {
                return Err(Error::IndexOutOfRange { index: b.max_index(), n });
            }
            gens.push(f);
        }
        Ok(AlgebraSpec { name: name.into(), n, d_generators: gens })
    }

    /// The abelian algebra `ℂ^n`.
    pub fn torus(n: usize) -> Result<Self> {
        AlgebraSpec::new(format!("torus{n}"), n, vec![Form::zero(n); n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dα_i`, 1-indexed.
    pub fn d_generator(&self, i: usize) -> &Form {
        &self.d_generators[i - 1]
    }

    pub fn d_generators(&self) -> &[Form] {
        &self.d_generators
    }

    pub fn is_abelian(&self) -> bool {
        self.d_generators.iter().all(Form::is_zero)
    }

    /// Structure-file text that parses back to this spec.
    pub fn to_dsl(&self) -> String {
        let mut out = format!("algebra {} dim {}\n", self.name, self.n);
        for (k, f) in self.d_generators.iter().enumerate() {
            if !f.is_zero() {
                let _ = writeln!(out, "d a{} = {}", k + 1, f.render());
            }
        }
        out
    }
}
