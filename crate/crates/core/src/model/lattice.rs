//! Gauss-law reduction of the open `(2N+1)×(2N+1)` square lattice.
//!
//! Sites are `(x, y)` with `0 ≤ x, y ≤ M`, `M = 2N+1`. The horizontal link
//! `h(x,y)` runs `(x,y)→(x+1,y)` and the vertical link `v(x,y)` runs
//! `(x,y)→(x,y+1)`. Gauss's law at every site reads outgoing − incoming = `Q`.
//! Independent fields are the horizontal links with `x, y < M`.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Link {
    Horizontal { x: usize, y: usize },
    Vertical { x: usize, y: usize },
}

/// Vertex order in which Gauss's law is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationOrder {
    /// Row snake, `x` fastest; the top row is finished right to left.
    Serpentine,
    /// Columns left to right, each bottom to top.
    ColumnMajor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub site: (usize, usize),
    pub link: Link,
}

/// `Σ fields[k] E_k + Σ charges[s] Q_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub fields: DVector<f64>,
    pub charges: DVector<f64>,
}

impl LinearForm {
    fn zero(nf: usize, ns: usize) -> Self {
        Self { fields: DVector::zeros(nf), charges: DVector::zeros(ns) }
    }

    fn axpy(&mut self, a: f64, other: &LinearForm) {
        self.fields.axpy(a, &other.fields, 1.0);
        self.charges.axpy(a, &other.charges, 1.0);
    }

    pub fn evaluate(&self, fields: &[f64], charges: &[f64]) -> f64 {
        self.fields.iter().zip(fields).map(|(a, b)| a * b).sum::<f64>()
            + self.charges.iter().zip(charges).map(|(a, b)| a * b).sum::<f64>()
    }
}

pub fn link_count(n: usize) -> usize {
    4 * (n + 1) * (2 * n + 1)
}

pub fn constraint_count(n: usize) -> usize {
    4 * (n + 1) * (n + 1) - 1
}

pub fn independent_count(n: usize) -> usize {
    (2 * n + 1) * (2 * n + 1)
}

/// Sites in Jordan–Wigner order: row snake with `x` fastest.
pub fn serpentine_order(n: usize) -> Vec<(usize, usize)> {
    let m = 2 * n + 1;
    (0..=m)
        .flat_map(|y| {
            let row: Vec<(usize, usize)> = (0..=m).map(|x| (x, y)).collect();
            if y % 2 == 0 {
                row
            } else {
                row.into_iter().rev().collect()
            }
        })
        .collect()
}

fn column_major_order(n: usize) -> Vec<(usize, usize)> {
    let m = 2 * n + 1;
    (0..=m).flat_map(|x| (0..=m).map(move |y| (x, y))).collect()
}

/// Quadratic form of `H_E/g²` after eliminating dependent links.
#[derive(Clone, Debug)]
pub struct LatticeReduction {
    pub n: usize,
    pub order: EliminationOrder,
    /// Quadratic coefficients in plaquette variables `ε`, with `E_h(x,y) = ε(x,y) − ε(x,y−1)`.
    pub h2: DMatrix<f64>,
    /// Charge–field coefficients in plaquette variables, indexed `[site, field]`.
    pub h1: DMatrix<f64>,
    pub h0: DMatrix<f64>,
    /// Quadratic coefficients in the independent link fields.
    pub link_h2: DMatrix<f64>,
    pub link_h1: DMatrix<f64>,
    pub path: Vec<EliminationStep>,
    forms: HashMap<Link, LinearForm>,
}

impl LatticeReduction {
    /// Independent fields per side, `2N+1`.
    pub fn side(&self) -> usize {
        2 * self.n + 1
    }

    pub fn field_index(&self, x: usize, y: usize) -> usize {
        y * self.side() + x
    }

    pub fn site_index(&self, x: usize, y: usize) -> usize {
        y * (self.side() + 1) + x
    }

    /// Expression of a link's electric field in independent links and charges.
    pub fn link_form(&self, link: Link) -> Option<&LinearForm> {
        self.forms.get(&link)
    }

    pub fn links(&self) -> impl Iterator<Item = (&Link, &LinearForm)> {
        self.forms.iter()
    }

    /// `Σ_links E²/2` at the given independent link fields and charges.
    pub fn electric_energy(&self, fields: &[f64], charges: &[f64]) -> f64 {
        self.forms.values().map(|f| f.evaluate(fields, charges).powi(2)).sum::<f64>() * 0.5
    }

    /// Map `T` with `E_link = T ε`.
    pub fn plaquette_transform(&self) -> DMatrix<f64> {
        let m = self.side();
        let mut t = DMatrix::zeros(m * m, m * m);
        for y in 0..m {
            for x in 0..m {
                let i = self.field_index(x, y);
                t[(i, i)] = 1.0;
                if y > 0 {
                    t[(i, self.field_index(x, y - 1))] = -1.0;
                }
            }
        }
        t
    }

    /// `B` with plaquette angles `θ = B χ`, `θ(x,y) = χ(x,y) − χ(x,y+1)` and `χ(x,M) = 0`.
    pub fn magnetic_difference(&self) -> DMatrix<f64> {
        let m = self.side();
        let mut b = DMatrix::zeros(m * m, m * m);
        for y in 0..m {
            for x in 0..m {
                let i = self.field_index(x, y);
                b[(i, i)] = 1.0;
                if y + 1 < m {
                    b[(i, self.field_index(x, y + 1))] = -1.0;
                }
            }
        }
        b
    }
}

pub fn gauss_reduce(n: usize) -> LatticeReduction {
    gauss_reduce_with(n, EliminationOrder::Serpentine)
}

pub fn gauss_reduce_with(n: usize, order: EliminationOrder) -> LatticeReduction {
    let m = 2 * n + 1;
    let nf = m * m;
    let ns = (m + 1) * (m + 1);
    let field = |x: usize, y: usize| y * m + x;
    let site = |x: usize, y: usize| y * (m + 1) + x;

    let mut forms: HashMap<Link, LinearForm> = HashMap::new();
    for y in 0..m {
        for x in 0..m {
            let mut f = LinearForm::zero(nf, ns);
            f.fields[field(x, y)] = 1.0;
            forms.insert(Link::Horizontal { x, y }, f);
        }
    }

    // (link, +1 outgoing / −1 incoming)
    let incident = |x: usize, y: usize| {
        let mut v = Vec::with_capacity(4);
        if x < m {
            v.push((Link::Horizontal { x, y }, 1.0));
        }
        if y < m {
            v.push((Link::Vertical { x, y }, 1.0));
        }
        if x > 0 {
            v.push((Link::Horizontal { x: x - 1, y }, -1.0));
        }
        if y > 0 {
            v.push((Link::Vertical { x, y: y - 1 }, -1.0));
        }
        v
    };

    let sites = match order {
        EliminationOrder::Serpentine => serpentine_order(n),
        EliminationOrder::ColumnMajor => column_major_order(n),
    };
    let mut path = Vec::with_capacity(sites.len() - 1);
    for &(x, y) in &sites[..sites.len() - 1] {
        let links = incident(x, y);
        let unknown: Vec<&(Link, f64)> = links.iter().filter(|(l, _)| !forms.contains_key(l)).collect();
        assert_eq!(unknown.len(), 1, "vertex order leaves site ({x},{y}) with {} unknowns", unknown.len());
        let (target, sign) = *unknown[0];
        // sign·E_target = Q − Σ_known sign_l E_l
        let mut f = LinearForm::zero(nf, ns);
        f.charges[site(x, y)] = 1.0;
        for (l, s) in &links {
            if *l != target {
                f.axpy(-s, &forms[l]);
            }
        }
        f.fields *= sign;
        f.charges *= sign;
        forms.insert(target, f);
        path.push(EliminationStep { site: (x, y), link: target });
    }
    assert_eq!(forms.len(), link_count(n));

    let mut link_h2 = DMatrix::zeros(nf, nf);
    let mut link_h1 = DMatrix::zeros(ns, nf);
    let mut h0 = DMatrix::zeros(ns, ns);
    for f in forms.values() {
        link_h2 += &f.fields * f.fields.transpose() * 0.5;
        link_h1 += &f.charges * f.fields.transpose();
        h0 += &f.charges * f.charges.transpose() * 0.5;
    }
    let mut r = LatticeReduction {
        n,
        order,
        h2: DMatrix::zeros(0, 0),
        h1: DMatrix::zeros(0, 0),
        h0,
        link_h2,
        link_h1,
        path,
        forms,
    };
    let t = r.plaquette_transform();
    r.h2 = t.transpose() * &r.link_h2 * &t;
    r.h1 = &r.link_h1 * &t;
    r
}

/// Displayed normal-mode expression for `k_x, k_y = 1 … 2N+1`, ascending.
pub fn formula_frequencies(n: usize) -> Vec<f64> {
    let m = 2 * n + 1;
    let d = 4.0 * (n as f64 + 1.0);
    let pi = std::f64::consts::PI;
    let mut w: Vec<f64> = (1..=m)
        .flat_map(|kx| {
            (1..=m).map(move |ky| {
                2.0 * (pi * kx as f64 / d).sin().powi(2)
                    + 2.0 * ((kx as f64 + 1.0) * pi / 2.0 + pi * ky as f64 / d).sin().powi(2)
            })
        })
        .collect();
    w.sort_by(f64::total_cmp);
    w
}

/// `4 sin²(π/(4(N+1)))`, the displayed bosonic gap.
pub fn gap_formula(n: usize) -> f64 {
    4.0 * (std::f64::consts::PI / (4.0 * (n as f64 + 1.0))).sin().powi(2)
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalModes {
    pub n: usize,
    pub formula_values: Vec<f64>,
    /// `√(2·eig H2)` for `H = εᵀ H2 ε + ½ Σ θ²` in plaquette variables.
    pub numeric_values: Vec<f64>,
    /// The same frequencies from link variables, `ω² = eig(2 H2_link BᵀB)`.
    pub link_values: Vec<f64>,
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

pub fn normal_mode_frequencies(n: usize) -> NormalModes {
    let r = gauss_reduce(n);
    let numeric_values = sorted_eigenvalues(&r.h2 * 2.0).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    let b = r.magnetic_difference();
    let link_values =
        sorted_eigenvalues(&b * &r.link_h2 * b.transpose() * 2.0).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    NormalModes { n, formula_values: formula_frequencies(n), numeric_values, link_values }
}

/// A nearest-neighbour hop and the shape of its Jordan–Wigner image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoppingTerm {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub jw_from: usize,
    pub jw_to: usize,
    /// Number of `Z` factors strictly between the two sites.
    pub string_len: usize,
    /// Independent field whose link operator multiplies the hop, if any.
    pub link_field: Option<usize>,
}

pub fn lattice_hopping_terms(n: usize) -> Vec<HoppingTerm> {
    let m = 2 * n + 1;
    let order = serpentine_order(n);
    let pos: HashMap<(usize, usize), usize> = order.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut terms = Vec::new();
    for y in 0..=m {
        for x in 0..=m {
            let mut push = |to: (usize, usize), link_field: Option<usize>| {
                let (a, b) = (pos[&(x, y)], pos[&to]);
                terms.push(HoppingTerm {
                    from: (x, y),
                    to,
                    jw_from: a,
                    jw_to: b,
                    string_len: a.abs_diff(b) - 1,
                    link_field,
                });
            };
            if x < m {
                push((x + 1, y), (y < m).then_some(y * m + x));
            }
            if y < m {
                push((x, y + 1), None);
            }
        }
    }
    terms
}
