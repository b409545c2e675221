//! A one-face CW model of the compact surface of genus `h` with `c` boundary
//! circles, and the reference answers derived from it.
//!
//! Cells:
//! * vertices: the base point `v`, plus one point `w_j` on each boundary circle;
//! * edges: loops `a_i`, `b_i` at `v`, the boundary loops `e_j` at `w_j`, and
//!   arcs `t_j` from `v` to `w_j`;
//! * one 2-cell glued along `Π [a_i, b_i] · Π t_j e_j t_j⁻¹`.
//!
//! When `c = 0` the `e`/`t` cells are absent and the word is the usual
//! product of commutators.

use crate::linalg::rank_by_elimination;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CwSurface {
    pub genus: usize,
    pub boundary: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Edge {
    A(usize),
    B(usize),
    E(usize),
    T(usize),
}

impl CwSurface {
    pub fn new(genus: usize, boundary: usize) -> Self {
        Self { genus, boundary }
    }

    fn vertex_count(&self) -> usize {
        1 + self.boundary
    }

    fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..self.genus {
            out.push(Edge::A(i));
            out.push(Edge::B(i));
        }
        for j in 0..self.boundary {
            out.push(Edge::E(j));
        }
        for j in 0..self.boundary {
            out.push(Edge::T(j));
        }
        out
    }

    fn edge_index(&self, e: Edge) -> usize {
        self.edges().iter().position(|&x| x == e).expect("edge exists")
    }

    /// Attaching word of the single 2-cell, as a list of edges (orientation
    /// is irrelevant mod 2).
    fn face_word(&self) -> Vec<Edge> {
        let mut word = Vec::new();
        for i in 0..self.genus {
            word.extend([Edge::A(i), Edge::B(i), Edge::A(i), Edge::B(i)]);
        }
        for j in 0..self.boundary {
            word.extend([Edge::T(j), Edge::E(j), Edge::T(j)]);
        }
        word
    }

    /// `∂₁` with rows indexed by vertices and columns by edges.
    pub fn boundary_1(&self) -> Vec<Vec<u8>> {
        let edges = self.edges();
        let mut m = vec![vec![0u8; edges.len()]; self.vertex_count()];
        for (col, e) in edges.iter().enumerate() {
            if let Edge::T(j) = e {
                m[0][col] ^= 1;
                m[1 + j][col] ^= 1;
            }
        }
        m
    }

    /// `∂₂` with rows indexed by edges and one column for the face.
    pub fn boundary_2(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; 1]; self.edges().len()];
        for e in self.face_word() {
            m[self.edge_index(e)][0] ^= 1;
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edges().len() as i64 + 1
    }

    /// Betti numbers over F₂ in degrees 0, 1, 2.
    pub fn betti(&self) -> [usize; 3] {
        let d1 = self.boundary_1();
        let d2 = self.boundary_2();
        let r1 = rank_by_elimination(&d1);
        let r2 = rank_by_elimination(&d2);
        let v = self.vertex_count();
        let e = self.edges().len();
        [v - r1, e - r1 - r2, 1 - r2]
    }

    fn edge_vector(&self, e: Edge) -> Vec<u8> {
        let mut v = vec![0u8; self.edges().len()];
        v[self.edge_index(e)] = 1;
        v
    }

    /// Cycle representatives in the order `a_1, b_1, …, a_h, b_h, e_1, …, e_{c-1}`.
    pub fn h1_representatives(&self) -> Vec<Vec<u8>> {
        let mut reps = Vec::new();
        for i in 0..self.genus {
            reps.push(self.edge_vector(Edge::A(i)));
            reps.push(self.edge_vector(Edge::B(i)));
        }
        for j in 0..self.boundary.saturating_sub(1) {
            reps.push(self.edge_vector(Edge::E(j)));
        }
        reps
    }

    fn image_of_boundary_2(&self) -> Vec<Vec<u8>> {
        let d2 = self.boundary_2();
        (0..d2[0].len())
            .map(|col| d2.iter().map(|row| row[col]).collect())
            .collect()
    }

    /// True when the representatives are cycles whose classes form a basis of H₁.
    pub fn representatives_form_basis(&self) -> bool {
        let d1 = self.boundary_1();
        let reps = self.h1_representatives();
        let is_cycle = |v: &Vec<u8>| {
            d1.iter()
                .all(|row| row.iter().zip(v).fold(0u8, |acc, (a, b)| acc ^ (a & b)) == 0)
        };
        if !reps.iter().all(is_cycle) {
            return false;
        }
        let boundaries = self.image_of_boundary_2();
        let base = rank_by_elimination(&boundaries);
        let mut stacked = boundaries.clone();
        stacked.extend(reps.iter().cloned());
        rank_by_elimination(&stacked) == base + reps.len() && reps.len() == self.betti()[1]
    }

    /// True when `e_c` is homologous to `e_1 + … + e_{c-1}`.
    pub fn last_boundary_is_sum_of_others(&self) -> bool {
        if self.boundary == 0 {
            return true;
        }
        let mut v = vec![0u8; self.edges().len()];
        for j in 0..self.boundary {
            v[self.edge_index(Edge::E(j))] ^= 1;
        }
        let boundaries = self.image_of_boundary_2();
        let base = rank_by_elimination(&boundaries);
        let mut stacked = boundaries;
        stacked.push(v);
        rank_by_elimination(&stacked) == base
    }
}

/// A degree-one class in the basis `a_i, b_i, d_j` (all indices 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleClass {
    A(usize),
    B(usize),
    D(usize),
}

/// Mod-2 intersection number of two degree-one basis classes.
///
/// The surface is closed up by capping its boundary circles; `a_i` and `b_i`
/// become chords of the `4h`-gon joining the two sides with the same label,
/// and two chords meet an odd number of times exactly when their endpoints
/// interleave. The boundary loops sit in small disks around the caps, away
/// from every chord.
pub fn intersection_by_chords(genus: usize, x: OracleClass, y: OracleClass) -> u8 {
    let chord = |c: OracleClass| -> Option<(usize, usize)> {
        match c {
            OracleClass::A(i) if i >= 1 && i <= genus => Some((4 * (i - 1), 4 * (i - 1) + 2)),
            OracleClass::B(i) if i >= 1 && i <= genus => {
                Some((4 * (i - 1) + 1, 4 * (i - 1) + 3))
            }
            _ => None,
        }
    };
    let (Some((p0, p1)), Some((q0, q1))) = (chord(x), chord(y)) else {
        return 0;
    };
    if (p0, p1) == (q0, q1) {
        return 0;
    }
    let inside = |q: usize| p0 < q && q < p1;
    u8::from(inside(q0) != inside(q1))
}

/// `(genus, boundary_count)` of each component of Σ minus an open annulus
/// around the curve, derived from Euler characteristic and boundary counts.
///
/// `split` is `None` for a non-separating curve, otherwise the genus and
/// boundary counts `(g1, b1, g2, b2)` of the two sides.
pub fn complement_components(
    genus: usize,
    boundary: usize,
    split: Option<(usize, usize, usize, usize)>,
) -> Option<Vec<(usize, usize)>> {
    let chi = CwSurface::new(genus, boundary).euler_characteristic();
    match split {
        None => {
            // Cutting along a circle keeps χ and adds two boundary circles.
            let c = boundary as i64 + 2;
            let twice_h = 2 - chi - c;
            if twice_h < 0 || twice_h % 2 != 0 {
                return None;
            }
            Some(vec![((twice_h / 2) as usize, c as usize)])
        }
        Some((g1, b1, g2, b2)) => {
            let left = CwSurface::new(g1, b1 + 1);
            let right = CwSurface::new(g2, b2 + 1);
            if left.euler_characteristic() + right.euler_characteristic() != chi
                || b1 + b2 != boundary
            {
                return None;
            }
            Some(vec![(g1, b1 + 1), (g2, b2 + 1)])
        }
    }
}

/// One term `left ⊗ right` of the diagonal coproduct, with indices into the
/// basis `[pt, a_1, b_1, …, a_h, b_h, d_1, …, d_{c-1}]`.
pub type DualCoproductTerm = (usize, usize);

/// The diagonal coproduct of basis class `index`, computed as the transpose
/// of the cup product on the dual basis.
///
/// The unit `1 ∈ H⁰` is dual to `pt`; cup products of positive-degree classes
/// land in H², whose dimension is read off the CW model.
pub fn diagonal_coproduct_by_duality(genus: usize, boundary: usize, index: usize) -> Vec<DualCoproductTerm> {
    let surface = CwSurface::new(genus, boundary);
    let [_, b1, b2] = surface.betti();
    let dim = 1 + b1;
    assert!(index < dim, "basis index out of range");
    let degree = |k: usize| usize::from(k > 0);
    // cup(u, v) as a vector over the dual basis, or None if it lands in H².
    let cup = |u: usize, v: usize| -> Option<usize> {
        match (degree(u), degree(v)) {
            (0, _) => Some(v),
            (_, 0) => Some(u),
            _ => None,
        }
    };
    let mut terms = Vec::new();
    for u in 0..dim {
        for v in 0..dim {
            match cup(u, v) {
                Some(w) if w == index => terms.push((u, v)),
                Some(_) => {}
                None => assert_eq!(b2, 0, "closed surfaces are outside this oracle"),
            }
        }
    }
    terms
}
