//! Vector fields given as constants or polynomials.

use serde::{Deserialize, Serialize};

use super::mesh::Point;
use super::FlowError;

/// `coefficient * x^px * y^py * z^pz`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coefficient: f64,
    pub exponents: [u32; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VectorField {
    Constant { vector: Point },
    /// One list of terms per component.
    Polynomial { components: [Vec<Term>; 3] },
}

impl VectorField {
    pub fn from_json(text: &str) -> Result<Self, FlowError> {
        let f: VectorField = serde_json::from_str(text).map_err(|e| FlowError::Parse(e.to_string()))?;
        let finite = match &f {
            VectorField::Constant { vector } => vector.iter().all(|x| x.is_finite()),
            VectorField::Polynomial { components } => components.iter().flatten().all(|t| t.coefficient.is_finite()),
        };
        if !finite {
            return Err(FlowError::Parse("field coefficients must be finite".into()));
        }
        Ok(f)
    }

    /// The field `p -> (x, y, z)`, pointing out of every sphere about the origin.
    pub fn radial() -> Self {
        let term = |k: usize| {
            let mut exponents = [0; 3];
            exponents[k] = 1;
            vec![Term { coefficient: 1.0, exponents }]
        };
        VectorField::Polynomial { components: [term(0), term(1), term(2)] }
    }

    pub fn eval(&self, p: Point) -> Point {
        match self {
            VectorField::Constant { vector } => *vector,
            VectorField::Polynomial { components } => components.clone().map(|terms| {
                terms
                    .iter()
                    .map(|t| {
                        t.coefficient
                            * p[0].powi(t.exponents[0] as i32)
                            * p[1].powi(t.exponents[1] as i32)
                            * p[2].powi(t.exponents[2] as i32)
                    })
                    .sum()
            }),
        }
    }

    pub fn scaled(&self, k: f64) -> Self {
        match self {
            VectorField::Constant { vector } => VectorField::Constant { vector: vector.map(|x| k * x) },
            VectorField::Polynomial { components } => VectorField::Polynomial {
                components: components.clone().map(|terms| {
                    terms.into_iter().map(|t| Term { coefficient: k * t.coefficient, ..t }).collect()
                }),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_evaluation() {
        let f = VectorField::from_json(
            r#"{"kind":"polynomial","components":[[{"coefficient":2,"exponents":[1,1,0]}],[],[{"coefficient":-1,"exponents":[0,0,2]},{"coefficient":3,"exponents":[0,0,0]}]]}"#,
        )
        .unwrap();
        assert_eq!(f.eval([2.0, 3.0, 4.0]), [12.0, 0.0, -13.0]);
        assert_eq!(VectorField::radial().eval([1.0, -2.0, 0.5]), [1.0, -2.0, 0.5]);
        let c = VectorField::from_json(r#"{"kind":"constant","vector":[0,0,-1]}"#).unwrap();
        assert_eq!(c.scaled(3.0).eval([9.0, 9.0, 9.0]), [0.0, 0.0, -3.0]);
        assert!(VectorField::from_json(r#"{"kind":"constant","vector":[0,0]}"#).is_err());
    }
}
