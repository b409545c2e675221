use std::fmt;

use serde::{Serialize, Serializer};

use crate::floer::TwistGenerator;
use crate::surface::SurfaceClass;

/// Semantic name of a basis vector.
///
/// Tensor labels are kept flat: tensoring `x⊗y` with `z` gives the
/// three-factor label `x⊗y⊗z`, so both bracketings of a triple tensor
/// produce identical bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Surface(SurfaceClass),
    Twist(TwistGenerator),
    Tensor(Vec<BasisLabel>),
    Named(String),
}

impl BasisLabel {
    pub fn named(name: impl Into<String>) -> Self {
        Self::Named(name.into())
    }

    pub fn tensor(&self, other: &BasisLabel) -> BasisLabel {
        let mut factors = self.factors().to_vec();
        factors.extend_from_slice(other.factors());
        BasisLabel::Tensor(factors)
    }

    /// The tensor factors, or the label itself when it is not a tensor.
    pub fn factors(&self) -> &[BasisLabel] {
        match self {
            BasisLabel::Tensor(f) => f,
            other => std::slice::from_ref(other),
        }
    }

    pub fn arity(&self) -> usize {
        self.factors().len()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Surface(c) => write!(f, "{c}"),
            BasisLabel::Twist(t) => write!(f, "{t}"),
            BasisLabel::Named(s) => f.write_str(s),
            BasisLabel::Tensor(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("⊗")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<SurfaceClass> for BasisLabel {
    fn from(c: SurfaceClass) -> Self {
        BasisLabel::Surface(c)
    }
}

impl From<TwistGenerator> for BasisLabel {
    fn from(t: TwistGenerator) -> Self {
        BasisLabel::Twist(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_flattens() {
        let x = BasisLabel::named("x");
        let y = BasisLabel::named("y");
        let z = BasisLabel::named("z");
        assert_eq!(x.tensor(&y).tensor(&z), x.tensor(&y.tensor(&z)));
        assert_eq!(x.tensor(&y).tensor(&z).to_string(), "x⊗y⊗z");
        assert_eq!(x.arity(), 1);
    }
}
