use super::poly::{self, Polynomial};
use super::{Field, NFElement, Value};
use crate::error::{Error, Result};

/// A field homomorphism `source -> target`, determined by the image of the
/// source generator. The source's base field must lie in the target tower
/// and is mapped canonically.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Option<Value>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field, generator_image: Option<NFElement>) -> Result<Self> {
        let Some(base) = source.base() else {
            if generator_image.is_some() {
                return Err(Error::InvalidEmbedding("Q has no generator to map".into()));
            }
            return Ok(Embedding { source: source.clone(), target: target.clone(), generator_image: None });
        };
        if !target.contains(base) {
            return Err(Error::InvalidEmbedding(format!(
                "base field {} of {} does not lie below {}",
                base.name(),
                source.name(),
                target.name()
            )));
        }
        let image = generator_image
            .ok_or_else(|| Error::InvalidEmbedding("missing generator image".into()))?;
        if image.field() != target {
            return Err(Error::InvalidEmbedding(format!(
                "generator image lies in {}, not {}",
                image.field().name(),
                target.name()
            )));
        }
        let m: Vec<Value> = source
            .min_poly_values()
            .unwrap()
            .iter()
            .map(|c| target.lift_from(base, c).expect("base lies below target"))
            .collect();
        let at = poly::eval(target, &m, image.value());
        if !target.is_zero(&at) {
            return Err(Error::InvalidEmbedding(format!(
                "{} is not a root of the minimal polynomial of {}",
                image,
                source.name()
            )));
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            generator_image: Some(image.into_value()),
        })
    }

    pub fn identity(field: &Field) -> Self {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            generator_image: field.generator().map(NFElement::into_value),
        }
    }

    /// Canonical inclusion of a field into a field above it in a tower.
    pub fn inclusion(source: &Field, target: &Field) -> Result<Self> {
        if !target.contains(source) {
            return Err(Error::InvalidEmbedding(format!(
                "{} does not lie below {}",
                source.name(),
                target.name()
            )));
        }
        let image = source
            .generator()
            .map(|g| target.lift_from(source, g.value()).expect("contained"));
        Ok(Embedding { source: source.clone(), target: target.clone(), generator_image: image })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn generator_image(&self) -> Option<NFElement> {
        self.generator_image
            .as_ref()
            .map(|v| NFElement::from_parts(self.target.clone(), v.clone()))
    }

    pub(crate) fn apply_value(&self, a: &Value) -> Value {
        match (&self.generator_image, self.source.base()) {
            (None, _) => self
                .target
                .from_rational(a.as_rational().expect("rational value")),
            (Some(img), Some(base)) => {
                let Value::Vec(cs) = a else { unreachable!("extension value") };
                let t = &self.target;
                cs.iter().rev().fold(t.zero(), |acc, c| {
                    let lifted = t.lift_from(base, c).expect("base lies below target");
                    t.add(&t.mul(&acc, img), &lifted)
                })
            }
            (Some(_), None) => unreachable!("Q has no generator"),
        }
    }

    pub fn apply(&self, a: &NFElement) -> Result<NFElement> {
        if a.field() != &self.source {
            return Err(Error::FieldMismatch(format!(
                "element of {} given to an embedding of {}",
                a.field().name(),
                self.source.name()
            )));
        }
        Ok(NFElement::from_parts(self.target.clone(), self.apply_value(a.value())))
    }
}

/// Coefficientwise image of a polynomial.
pub fn embed_poly(p: &Polynomial, phi: &Embedding) -> Result<Polynomial> {
    if p.field() != phi.source() {
        return Err(Error::FieldMismatch(format!(
            "polynomial over {} given to an embedding of {}",
            p.field().name(),
            phi.source().name()
        )));
    }
    let coeffs = p.coeffs().iter().map(|c| phi.apply_value(c)).collect();
    Ok(Polynomial::from_values(phi.target().clone(), coeffs))
}
