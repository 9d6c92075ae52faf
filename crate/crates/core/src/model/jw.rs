//! Jordan–Wigner images of staggered fermions on qubit registers.
//!
//! Site `k` (0-based) maps to `Ψ_k = (−i)^k Z_0 ⋯ Z_{k−1} X⁻_k`; an occupied
//! site is qubit `|0⟩`.

use nalgebra::{DMatrix, DVector};

use crate::hybrid::operator::kron;
use crate::hybrid::qubit::{pauli_z, x_minus};
use crate::numerics::linalg::C64;

/// Fermion operators on `sites` qubits as dense `2^sites` matrices.
#[derive(Clone, Debug)]
pub struct JwTable {
    pub sites: usize,
    pub annihilators: Vec<DMatrix<C64>>,
    pub creators: Vec<DMatrix<C64>>,
    pub numbers: Vec<DMatrix<C64>>,
    /// Staggered charges `Q_k = n_k − [k odd]`.
    pub charges: Vec<DMatrix<C64>>,
}

fn string_operator(sites: usize, k: usize) -> DMatrix<C64> {
    let id = DMatrix::<C64>::identity(2, 2);
    let mut m = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for l in 0..sites {
        let factor = match l.cmp(&k) {
            std::cmp::Ordering::Less => pauli_z(),
            std::cmp::Ordering::Equal => x_minus(),
            std::cmp::Ordering::Greater => id.clone(),
        };
        m = kron(&m, &factor);
    }
    m
}

pub fn jordan_wigner(sites: usize) -> JwTable {
    let dim = 1usize << sites;
    let id = DMatrix::<C64>::identity(dim, dim);
    let annihilators: Vec<DMatrix<C64>> =
        (0..sites).map(|k| string_operator(sites, k) * C64::new(0.0, -1.0).powu(k as u32)).collect();
    let creators: Vec<DMatrix<C64>> = annihilators.iter().map(|a| a.adjoint()).collect();
    let numbers: Vec<DMatrix<C64>> = creators.iter().zip(&annihilators).map(|(c, a)| c * a).collect();
    let charges = numbers.iter().enumerate().map(|(k, n)| if k % 2 == 1 { n - &id } else { n.clone() }).collect();
    JwTable { sites, annihilators, creators, numbers, charges }
}

/// The four plaquette sites `(0,0), (0,1), (1,1), (1,0)` labelled 1..4.
pub fn jw_single_plaquette() -> JwTable {
    jordan_wigner(4)
}

impl JwTable {
    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    pub fn total_charge(&self) -> DMatrix<C64> {
        self.charges.iter().fold(DMatrix::zeros(self.dim(), self.dim()), |acc, q| acc + q)
    }

    /// Occupations of register index `index` (qubit `|0⟩` is occupied).
    pub fn occupations(&self, index: usize) -> Vec<u8> {
        (0..self.sites).map(|k| u8::from((index >> (self.sites - 1 - k)) & 1 == 0)).collect()
    }

    pub fn charge_of(&self, index: usize) -> i32 {
        self.occupations(index).iter().enumerate().map(|(k, &n)| n as i32 - (k % 2) as i32).sum()
    }

    /// Register index of the state with no particles or antiparticles.
    pub fn vacuum_index(&self) -> usize {
        (0..self.sites).filter(|k| k % 2 == 0).map(|k| 1 << (self.sites - 1 - k)).sum()
    }

    pub fn basis_vector(&self, index: usize) -> DVector<C64> {
        let mut v = DVector::zeros(self.dim());
        v[index] = C64::new(1.0, 0.0);
        v
    }
}

/// The 16 occupation states of one plaquette and its neutral subspace.
#[derive(Clone, Debug)]
pub struct FermionSector {
    pub basis: Vec<[u8; 4]>,
    pub charge_zero_indices: Vec<usize>,
}

impl FermionSector {
    pub fn single_plaquette() -> Self {
        let table = jw_single_plaquette();
        let basis = (0..16)
            .map(|i| {
                let o = table.occupations(i);
                [o[0], o[1], o[2], o[3]]
            })
            .collect();
        let charge_zero_indices = (0..16).filter(|&i| table.charge_of(i) == 0).collect();
        Self { basis, charge_zero_indices }
    }

    pub fn charge(&self, index: usize) -> i32 {
        let o = self.basis[index];
        o[0] as i32 + o[2] as i32 + o[1] as i32 - 1 + o[3] as i32 - 1
    }
}

/// Register vectors of `|v_1⟩ … |v_6⟩`, built by acting on `|Ω_f⟩`.
pub fn neutral_states() -> [DVector<C64>; 6] {
    let t = jw_single_plaquette();
    let omega = t.basis_vector(t.vacuum_index());
    let (a, c) = (&t.annihilators, &t.creators);
    [
        omega.clone(),
        &a[1] * (&c[2] * &omega),
        &c[2] * (&a[3] * &omega),
        &c[0] * (&a[1] * &omega),
        &c[0] * (&a[3] * &omega),
        &c[0] * (&a[1] * (&c[2] * (&a[3] * &omega))),
    ]
}
