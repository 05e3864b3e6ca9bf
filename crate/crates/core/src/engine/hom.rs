use crate::ambient::{AmbientAlgebra, AmbientElement};
use crate::arith::ratfunc::{RationalFunction, Valuation};
use crate::free::{FreePolynomial, Letter, Word};

use super::EngineError;

/// The homomorphism from the free algebra determined by the images of `x` and `y`.
#[derive(Clone, Debug)]
pub struct HomomorphismSpec {
    ambient: AmbientAlgebra,
    image_x: AmbientElement,
    image_y: AmbientElement,
    gamma: i64,
}

impl HomomorphismSpec {
    pub fn new(ambient: AmbientAlgebra, image_x: AmbientElement, image_y: AmbientElement) -> Result<Self, EngineError> {
        let image_x = ambient.reduce(image_x);
        let image_y = ambient.reduce(image_y);
        for (name, img) in [('x', &image_x), ('y', &image_y)] {
            ambient.validate(img)?;
            if !ambient.flatten(img).iter().all(RationalFunction::is_laurent) {
                return Err(EngineError::NotLaurent { generator: name });
            }
        }
        let mut lowest = Valuation::Finite(0);
        for a in [&image_x, &image_y] {
            lowest = lowest.min(ambient.min_valuation(a));
            for b in [&image_x, &image_y] {
                lowest = lowest.min(ambient.min_valuation(&ambient.mul(a, b)?));
            }
        }
        let gamma = lowest.finite().map_or(0, |v| (-v).max(0));
        Ok(HomomorphismSpec { ambient, image_x, image_y, gamma })
    }

    pub fn ambient(&self) -> &AmbientAlgebra {
        &self.ambient
    }

    pub fn image(&self, l: Letter) -> &AmbientElement {
        match l {
            Letter::X => &self.image_x,
            Letter::Y => &self.image_y,
        }
    }

    /// Pole bound: no coordinate of the generator images or their pairwise products
    /// has a pole of order above `gamma` at 0.
    pub fn gamma(&self) -> i64 {
        self.gamma
    }

    pub fn apply_word(&self, w: &Word) -> AmbientElement {
        w.letters().iter().fold(self.ambient.identity(), |acc, &l| {
            self.ambient.mul(&acc, self.image(l)).expect("images conform to the ambient algebra")
        })
    }

    pub fn apply(&self, p: &FreePolynomial<RationalFunction>) -> AmbientElement {
        p.terms().fold(self.ambient.zero(), |acc, (w, c)| acc.add(&self.apply_word(w).scale(c)))
    }

    pub fn mul(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        self.ambient.mul(a, b).expect("elements conform to the ambient algebra")
    }
}
