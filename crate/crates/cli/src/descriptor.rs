//! JSON function descriptors, tagged by `kind`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use walshcode_core::code::Domain;
use walshcode_core::families::{self, fits_shape, Family, FamilyDescriptor, QuadraticShape};
use walshcode_core::{BooleanFunction, Error, Field, ProductFunction, QuadraticForm};

use crate::error::{CliError, Result};
use crate::hex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionDescriptor {
    /// `Tr(alpha x^d)`.
    Monomial {
        n: u32,
        d: u64,
        alpha_hex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly_hex: Option<String>,
    },
    /// `coeffs_hex[k]` multiplies `Tr(x^(1 + 2^(k+1)))`; `half_hex` is the
    /// coefficient of the half-trace term.
    Quadratic {
        n: u32,
        shape: String,
        coeffs_hex: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        half_hex: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly_hex: Option<String>,
    },
    Product {
        f1: Box<FunctionDescriptor>,
        f2: Box<FunctionDescriptor>,
    },
    Raw {
        n: u32,
        truth_table_hex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly_hex: Option<String>,
    },
    Family {
        name: String,
        params: FamilyParams,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly_hex: Option<String>,
}

/// A descriptor turned into a function, plus the family report when the
/// descriptor named a family.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub domain: Domain,
    pub family: Option<FamilyDescriptor>,
}

impl FunctionDescriptor {
    pub fn parse(text: &str) -> Result<FunctionDescriptor> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// The raw truth-table descriptor of `f`, keeping its field polynomial.
    pub fn raw(f: &BooleanFunction) -> FunctionDescriptor {
        let field = f.field();
        let poly = walshcode_core::field::default_poly(field.n()).ok();
        FunctionDescriptor::Raw {
            n: field.n(),
            truth_table_hex: hex::encode_table(f),
            poly_hex: (poly != Some(field.poly())).then(|| hex::element(field.poly())),
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, FunctionDescriptor::Product { .. })
    }

    /// Builds the function. `poly` overrides any `poly_hex` in the document;
    /// it is refused for products, whose factors may live in different fields.
    pub fn resolve(&self, poly: Option<u32>) -> Result<Resolved> {
        match self {
            FunctionDescriptor::Product { f1, f2 } => {
                if poly.is_some() {
                    return Err(CliError::Usage("--poly does not apply to products; set poly_hex on each factor".into()));
                }
                let a = f1.single("f1")?;
                let b = f2.single("f2")?;
                Ok(Resolved { domain: Domain::Product(ProductFunction::new(a, b)), family: None })
            }
            _ => {
                let (f, family) = self.build_single(poly)?;
                Ok(Resolved { domain: Domain::Single(f), family })
            }
        }
    }

    fn single(&self, which: &str) -> Result<BooleanFunction> {
        if self.is_product() {
            return Err(CliError::Usage(format!("{which}: products cannot be nested")));
        }
        Ok(self.build_single(None)?.0)
    }

    fn build_single(&self, poly: Option<u32>) -> Result<(BooleanFunction, Option<FamilyDescriptor>)> {
        match self {
            FunctionDescriptor::Monomial { n, d, alpha_hex, poly_hex } => {
                let field = field(*n, poly_hex.as_deref(), poly)?;
                let alpha = element("alpha_hex", alpha_hex, *n)?;
                Ok((BooleanFunction::monomial(field, *d, alpha)?, None))
            }
            FunctionDescriptor::Quadratic { n, shape, coeffs_hex, half_hex, poly_hex } => {
                let field = field(*n, poly_hex.as_deref(), poly)?;
                let shape = QuadraticShape::from_name(shape)
                    .ok_or_else(|| Error::BadShape(format!("unknown shape {shape:?}")))?;
                let full = coeffs_hex
                    .iter()
                    .enumerate()
                    .map(|(k, c)| element(&format!("coeffs_hex[{k}]"), c, *n))
                    .collect::<Result<Vec<u32>>>()?;
                let half = half_hex.as_deref().map(|c| element("half_hex", c, *n)).transpose()?;
                let form = QuadraticForm { full, half };
                if !fits_shape(*n, &form, shape) {
                    return Err(Error::BadShape(format!("coefficients do not have shape {}", shape.name())).into());
                }
                Ok((BooleanFunction::quadratic(field, form)?, None))
            }
            FunctionDescriptor::Raw { n, truth_table_hex, poly_hex } => {
                let field = field(*n, poly_hex.as_deref(), poly)?;
                let bits = hex::decode_table(truth_table_hex, *n).map_err(|e| CliError::hex("truth_table_hex", e))?;
                Ok((BooleanFunction::from_bits(field, &bits)?, None))
            }
            FunctionDescriptor::Family { name, params } => {
                let family = Family::from_name(name).ok_or_else(|| CliError::UnknownFamily(name.clone()))?;
                let n = params.n;
                let field = field(n, params.poly_hex.as_deref(), poly)?;
                let alpha = params.alpha_hex.as_deref().map(|a| element("alpha_hex", a, n)).transpose()?;
                let inst = if family.is_bent() {
                    families::monomial_bent(field, family, params.h, alpha.unwrap_or(1))?
                } else {
                    if alpha.is_some_and(|a| a != 1) {
                        return Err(Error::BadParams(format!("{family} takes no alpha")).into());
                    }
                    families::semibent_monomial(field, family, params.h)?
                };
                Ok((inst.function, Some(inst.descriptor)))
            }
            FunctionDescriptor::Product { .. } => unreachable!("handled by resolve"),
        }
    }
}

fn element(name: &str, s: &str, n: u32) -> Result<u32> {
    hex::parse_element(s, n).map_err(|e| CliError::hex(name, e))
}

pub fn parse_poly(s: &str, n: u32) -> Result<u32> {
    Ok(hex::parse_value(s, n.min(31) + 1).map_err(|e| CliError::hex("poly", e))? as u32)
}

/// GF(2^n) modulo `poly`, else `poly_hex`, else the default polynomial.
pub fn field(n: u32, poly_hex: Option<&str>, poly: Option<u32>) -> Result<Arc<Field>> {
    if !(2..=24).contains(&n) {
        return Err(Error::UnsupportedN(n).into());
    }
    let poly = match (poly, poly_hex) {
        (Some(p), _) => Some(p),
        (None, Some(s)) => Some(parse_poly(s, n)?),
        (None, None) => None,
    };
    Ok(Arc::new(Field::new(n, poly)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        let err = FunctionDescriptor::parse(r#"{"kind":"monomial","n":5,"d":3,"alpha_hex":"1","beta":2}"#);
        assert!(matches!(err, Err(CliError::Json(_))));
        let err = FunctionDescriptor::parse(r#"{"kind":"family","name":"gold","params":{"n":4,"x":1}}"#);
        assert!(matches!(err, Err(CliError::Json(_))));
    }

    #[test]
    fn monomial_resolves() {
        let d = FunctionDescriptor::parse(r#"{"kind":"monomial","n":5,"d":3,"alpha_hex":"01"}"#).unwrap();
        let r = d.resolve(None).unwrap();
        assert_eq!(r.domain.spectrum().to_string(), "[-8]^6 [0]^16 [8]^10");
    }

    #[test]
    fn shape_is_enforced() {
        let d = FunctionDescriptor::Quadratic {
            n: 6,
            shape: "binary".into(),
            coeffs_hex: vec!["1".into()],
            half_hex: Some("1".into()),
            poly_hex: None,
        };
        assert!(d.resolve(None).is_ok());
        let d = FunctionDescriptor::Quadratic {
            n: 6,
            shape: "binary".into(),
            coeffs_hex: vec!["2".into()],
            half_hex: Some("1".into()),
            poly_hex: None,
        };
        assert!(matches!(d.resolve(None), Err(CliError::Core(Error::BadShape(_)))));
    }

    #[test]
    fn unsupported_n() {
        let d = FunctionDescriptor::Raw { n: 25, truth_table_hex: String::new(), poly_hex: None };
        assert_eq!(d.resolve(None).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn poly_override() {
        let d = FunctionDescriptor::Monomial { n: 4, d: 3, alpha_hex: "1".into(), poly_hex: None };
        let Domain::Single(f) = d.resolve(Some(0x19)).unwrap().domain else { panic!() };
        assert_eq!(f.field().poly(), 0x19);
        let raw = FunctionDescriptor::raw(&f);
        assert_eq!(raw, FunctionDescriptor::parse(&raw.to_json()).unwrap());
        let Domain::Single(g) = raw.resolve(None).unwrap().domain else { panic!() };
        assert_eq!(g.field().poly(), 0x19);
        assert!(g.bits().eq(f.bits()));
    }
}
