use crate::error::{Error, FunctorTag, Result};
use crate::linalg::Mat;
use crate::module::{ModuleMap, QModule};
use crate::recollement::RecollementCtx;

/// The four adjoint pairs `(left, right)` of the recollement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adjunction {
    IUpperIStar,
    IStarIShriek,
    JShriekJUpper,
    JUpperJLower,
}

impl Adjunction {
    pub const ALL: [Adjunction; 4] = [
        Adjunction::IUpperIStar,
        Adjunction::IStarIShriek,
        Adjunction::JShriekJUpper,
        Adjunction::JUpperJLower,
    ];

    pub fn from_tags(left: FunctorTag, right: FunctorTag) -> Result<Adjunction> {
        Adjunction::ALL
            .into_iter()
            .find(|a| a.left() == left && a.right() == right)
            .ok_or(Error::NotAdjointPair(left, right))
    }

    pub fn left(self) -> FunctorTag {
        match self {
            Adjunction::IUpperIStar => FunctorTag::IUpper,
            Adjunction::IStarIShriek => FunctorTag::IStar,
            Adjunction::JShriekJUpper => FunctorTag::JShriek,
            Adjunction::JUpperJLower => FunctorTag::JUpper,
        }
    }

    pub fn right(self) -> FunctorTag {
        match self {
            Adjunction::IUpperIStar => FunctorTag::IStar,
            Adjunction::IStarIShriek => FunctorTag::IShriek,
            Adjunction::JShriekJUpper => FunctorTag::JUpper,
            Adjunction::JUpperJLower => FunctorTag::JLower,
        }
    }

    pub fn label(self) -> String {
        format!("({}, {})", self.left(), self.right())
    }
}

/// `Hom(FA, B) -> Hom(A, GB)`, `g ↦ G(g) ∘ η_A`, in coordinates.
#[derive(Clone, Debug)]
pub struct AdjunctionBijection {
    pub pair: Adjunction,
    /// Basis of `Hom(FA, B)`.
    pub left_basis: Vec<ModuleMap>,
    /// Basis of `Hom(A, GB)`.
    pub right_basis: Vec<ModuleMap>,
    /// Column `i` holds the coordinates of the image of `left_basis[i]`.
    pub matrix: Mat,
}

impl AdjunctionBijection {
    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }
}

fn same(f: &ModuleMap, g: &ModuleMap) -> bool {
    f.comps() == g.comps()
}

impl RecollementCtx {
    /// `η_A: A -> GFA`.
    pub fn unit(&self, pair: Adjunction, a: &QModule) -> ModuleMap {
        match pair {
            Adjunction::IUpperIStar => self.i_upper_unit(a),
            Adjunction::IStarIShriek => self.i_shriek_unit(a),
            Adjunction::JShriekJUpper => self.j_shriek_unit(a),
            Adjunction::JUpperJLower => self.j_lower_unit(a),
        }
    }

    /// `ε_B: FGB -> B`.
    pub fn counit(&self, pair: Adjunction, b: &QModule) -> ModuleMap {
        match pair {
            Adjunction::IUpperIStar => self.i_upper_counit(b),
            Adjunction::IStarIShriek => self.i_shriek_counit(b),
            Adjunction::JShriekJUpper => self.j_shriek_counit(b),
            Adjunction::JUpperJLower => self.j_lower_counit(b),
        }
    }

    /// `g ↦ G(g) ∘ η_A` for `g: FA -> B`.
    pub fn transpose_right(&self, pair: Adjunction, a: &QModule, g: &ModuleMap) -> ModuleMap {
        self.apply_map(pair.right(), g).compose(&self.unit(pair, a))
    }

    /// `f ↦ ε_B ∘ F(f)` for `f: A -> GB`.
    pub fn transpose_left(&self, pair: Adjunction, b: &QModule, f: &ModuleMap) -> ModuleMap {
        self.counit(pair, b)
            .compose(&self.apply_map(pair.left(), f))
    }

    /// The hom bijection for the adjoint pair `(left, right)` at `(A, B)`.
    pub fn adjunction_bijection(
        &self,
        left: FunctorTag,
        right: FunctorTag,
        a: &QModule,
        b: &QModule,
    ) -> Result<AdjunctionBijection> {
        let pair = Adjunction::from_tags(left, right)?;
        let fa = self.apply(left, a);
        let gb = self.apply(right, b);
        let left_basis = self.codomain(left).hom_space(&fa, b);
        let right_basis = self.domain(left).hom_space(a, &gb);
        let f = self.algebra().field();
        let mut matrix = Mat::zeros(f, right_basis.len(), left_basis.len());
        for (i, g) in left_basis.iter().enumerate() {
            let image = self.transpose_right(pair, a, g);
            let coords = self
                .domain(left)
                .coordinates(&right_basis, &image)
                .ok_or_else(|| Error::ExactnessFailure("transpose is not a module map".into()))?;
            for (r, c) in coords.into_iter().enumerate() {
                matrix.set(r, i, c);
            }
        }
        Ok(AdjunctionBijection {
            pair,
            left_basis,
            right_basis,
            matrix,
        })
    }

    /// Bijectivity, the round trip, and naturality against the given maps
    /// `into_a: A1 -> A` and `out_of_b: B -> B1`.
    pub fn verify_adjunction(
        &self,
        pair: Adjunction,
        a: &QModule,
        b: &QModule,
        into_a: &[ModuleMap],
        out_of_b: &[ModuleMap],
    ) -> std::result::Result<(), String> {
        let at = || {
            format!(
                "{} at ({}, {})",
                pair.label(),
                a.dim_string(),
                b.dim_string()
            )
        };
        let bij = self
            .adjunction_bijection(pair.left(), pair.right(), a, b)
            .map_err(|e| format!("{}: {e}", at()))?;
        if !bij.is_invertible() {
            return Err(format!(
                "{}: hom dimensions {} and {} not matched bijectively",
                at(),
                bij.left_basis.len(),
                bij.right_basis.len()
            ));
        }
        for g in &bij.left_basis {
            let phi = self.transpose_right(pair, a, g);
            if !same(&self.transpose_left(pair, b, &phi), g) {
                return Err(format!("{}: round trip is not the identity", at()));
            }
            for h in into_a {
                let lhs = self.transpose_right(
                    pair,
                    h.source(),
                    &g.compose(&self.apply_map(pair.left(), h)),
                );
                if !same(&lhs, &phi.compose(h)) {
                    return Err(format!("{}: not natural in the first argument", at()));
                }
            }
            for k in out_of_b {
                let lhs = self.transpose_right(pair, a, &k.compose(g));
                let rhs = self.apply_map(pair.right(), k).compose(&phi);
                if !same(&lhs, &rhs) {
                    return Err(format!("{}: not natural in the second argument", at()));
                }
            }
        }
        Ok(())
    }
}
