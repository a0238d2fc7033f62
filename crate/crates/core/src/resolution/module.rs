use super::free::{FreeElem, GradedFreeModule, GradedMatrix};
use super::syzygy::{certifying_cap, minimalize, syzygy_step};
use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::ring::{GradedIdeal, Ring};

/// `M = coker(A: F_1 -> F_0)`, kept minimal.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    matrix: GradedMatrix,
}

impl ModulePresentation {
    /// Presentation by an arbitrary homogeneous matrix; unit entries are pruned.
    pub fn from_matrix(a: &GradedMatrix) -> ModulePresentation {
        ModulePresentation { matrix: minimalize(a) }
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Ring) -> ModulePresentation {
        let target = GradedFreeModule::new(ring.clone(), vec![0]);
        let cols = (0..ring.nvars())
            .map(|v| {
                let (_, e) = ring.elem_of(&ring.var(v)).expect("variable").expect("relations lie in m^2");
                FreeElem { degree: 1, entries: vec![(0, e)] }
            })
            .collect();
        ModulePresentation::from_matrix(&GradedMatrix::from_columns(target, cols))
    }

    /// `R / (g_1, ..., g_k)`.
    pub fn quotient(ring: &Ring, gens: &[Polynomial]) -> Result<ModulePresentation> {
        let row: Vec<Polynomial> = gens.iter().map(|g| ring.normal_form(g)).filter(|g| !g.is_zero()).collect();
        let a = GradedMatrix::from_rows(ring, vec![0], &[row])?;
        Ok(ModulePresentation::from_matrix(&a))
    }

    /// Free module with the given generator degrees.
    pub fn free(ring: &Ring, degrees: Vec<i32>) -> ModulePresentation {
        let target = GradedFreeModule::new(ring.clone(), degrees);
        ModulePresentation { matrix: GradedMatrix::zero(GradedFreeModule::new(ring.clone(), vec![]), target) }
    }

    /// The ideal `(g_1, ..., g_k)` as a module: minimal generators, then their syzygies.
    /// `cap` bounds the syzygy degrees over non-artinian rings.
    pub fn ideal(ring: &Ring, gens: &[Polynomial], cap: Option<i32>) -> Result<ModulePresentation> {
        let ideal = GradedIdeal::new(ring.clone(), gens)?;
        let min = ideal.minimal_generator_vectors();
        if min.is_empty() {
            return Err(Error::InvalidArgument("the zero ideal is the zero module".into()));
        }
        let cols = min.iter().map(|(d, v)| FreeElem { degree: *d as i32, entries: vec![(0, v.clone())] }).collect();
        let row = GradedMatrix::from_columns(GradedFreeModule::new(ring.clone(), vec![0]), cols);
        let cap = match (certifying_cap(row.source()), cap) {
            (Some(c), _) => c,
            (None, Some(c)) => c,
            (None, None) => return Err(Error::InvalidArgument("a degree cap is needed over a non-artinian ring".into())),
        };
        let syz = syzygy_step(&row, cap)?;
        Ok(ModulePresentation { matrix: syz })
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let (a, b) = (&self.matrix, &other.matrix);
        let m = GradedMatrix::block(&[a.target().clone(), b.target().clone()], &[a.source().clone(), b.source().clone()], &[
            vec![Some(a), None],
            vec![None, Some(b)],
        ]);
        ModulePresentation { matrix: m }
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.matrix.nrows()
    }

    /// `H_M(d) = dim F_0,d - rank A_d`.
    pub fn hilbert_function(&self, d: i32) -> usize {
        let a = &self.matrix;
        let f0 = a.target().hilbert_function(d);
        let pf = self.ring().fp().expect("prime field");
        let Some(dmin) = a.source().min_degree() else { return f0 };
        if d < dmin {
            return f0;
        }
        let mut im = a.images();
        let mut rank = 0;
        for e in dmin..=d {
            let (imgs, _, tgt) = im.advance(e);
            if e == d {
                rank = crate::linalg::rank_of(pf, tgt.dim(), imgs.iter().cloned());
            }
        }
        f0 - rank
    }
}
