use crate::error::{Error, Result};
use crate::module::{ModuleMap, QModule};
use crate::recollement::RecollementCtx;

/// `0 -> T0 -> T1 -> T2 -> T3 -> 0` with its three maps.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub terms: Vec<QModule>,
    pub maps: Vec<ModuleMap>,
}

impl ExactSequence {
    /// Exactness at every position, checked vertexwise by rank.
    pub fn verify(&self) -> Result<()> {
        let first = &self.maps[0];
        let last = &self.maps[self.maps.len() - 1];
        if !first.is_injective() {
            return Err(Error::ExactnessFailure("first map is not injective".into()));
        }
        if !last.is_surjective() {
            return Err(Error::ExactnessFailure("last map is not surjective".into()));
        }
        for (pos, pair) in self.maps.windows(2).enumerate() {
            let (f, g) = (&pair[0], &pair[1]);
            if !g.compose(f).is_zero() {
                return Err(Error::ExactnessFailure(format!(
                    "maps at term {} do not compose to zero",
                    pos + 1
                )));
            }
            let middle = f.target();
            for v in 0..middle.vertex_count() {
                if f.comp(v).rank() + g.comp(v).rank() != middle.dim(v) {
                    return Err(Error::ExactnessFailure(format!(
                        "homology at term {} vertex {v}",
                        pos + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The two four-term sequences attached to a `Λ`-module `M`:
/// `0 -> i_*M' -> j_!j^*M -> M -> i_*i^*M -> 0` and
/// `0 -> i_*i^!M -> M -> j_*j^*M -> i_*N' -> 0`.
#[derive(Clone, Debug)]
pub struct GluingSequences {
    pub left: ExactSequence,
    pub right: ExactSequence,
    /// `M'` as a module over the quotient algebra.
    pub kernel_term: QModule,
    /// `N'` as a module over the quotient algebra.
    pub cokernel_term: QModule,
}

impl RecollementCtx {
    pub fn gluing_sequences(&self, m: &QModule) -> Result<GluingSequences> {
        let cat = self.big_cat();
        let vanishes_on_e =
            |x: &QModule| self.idempotent().vertices().iter().all(|&v| x.dim(v) == 0);

        let counit = self.j_shriek_counit(m);
        let unit = self.i_upper_unit(m);
        let (ker, inc) = cat.kernel(&counit);
        if !vanishes_on_e(&ker) {
            return Err(Error::ExactnessFailure(
                "kernel of j_!j^*M -> M is not killed by the ideal".into(),
            ));
        }
        let left = ExactSequence {
            terms: vec![
                ker.clone(),
                counit.source().clone(),
                m.clone(),
                unit.target().clone(),
            ],
            maps: vec![inc, counit, unit],
        };
        left.verify()?;

        let inclusion = self.i_shriek_counit(m);
        let restriction = self.j_lower_unit(m);
        let (cok, proj) = cat.cokernel(&restriction);
        if !vanishes_on_e(&cok) {
            return Err(Error::ExactnessFailure(
                "cokernel of M -> j_*j^*M is not killed by the ideal".into(),
            ));
        }
        let right = ExactSequence {
            terms: vec![
                inclusion.source().clone(),
                m.clone(),
                restriction.target().clone(),
                cok.clone(),
            ],
            maps: vec![inclusion, restriction, proj],
        };
        right.verify()?;

        Ok(GluingSequences {
            left,
            right,
            kernel_term: self.i_upper(&ker),
            cokernel_term: self.i_upper(&cok),
        })
    }
}
