//! The layered triangulation `D(ζ₁, …, ζ_t)` of a d-simplex.
//!
//! Vertex `w_{i,j}` sits on layer `j ∈ [3t]` above corner `i ∈ [d+1]`; the
//! outermost layer `3t` is the simplex's own vertex set. Layer 1 spans a full
//! simplex and every later layer is joined to the previous one by a staircase
//! triangulation of each facet prism.

use crate::complex::{Complex, SymbolTable};
use crate::error::GadgetError;
use crate::face::{Face, VertexId};

#[derive(Clone, Debug)]
pub struct DComplex {
    pub d: usize,
    pub t: usize,
    pub complex: Complex,
    /// `layers[j - 1][i - 1]` is `w_{i,j}`.
    pub layers: Vec<Vec<VertexId>>,
    pub zeta: Vec<Face>,
}

impl DComplex {
    /// The outermost layer, identified with the host simplex.
    pub fn outer(&self) -> &[VertexId] {
        self.layers.last().expect("t >= 1")
    }
}

/// Builds `D` with `w_{i,j}` at id `(j−1)(d+1) + (i−1)`.
pub fn build_d(d: usize, t: usize) -> Result<DComplex, GadgetError> {
    if t == 0 {
        return Err(GadgetError::Domain("D needs t >= 1".into()));
    }
    if d < 2 {
        return Err(GadgetError::Domain(format!(
            "d must be at least 2, got {d}"
        )));
    }
    let n = d + 1;
    let layer_count = 3 * t;
    let mut symbols = SymbolTable::new();
    let mut layers = Vec::with_capacity(layer_count);
    for j in 1..=layer_count {
        let row: Vec<VertexId> = (1..=n)
            .map(|i| {
                if j == layer_count {
                    symbols.push_named(format!("v{i}"))
                } else {
                    symbols.push_named(format!("w{i}.{j}"))
                }
            })
            .collect();
        layers.push(row);
    }

    let mut gens: Vec<Face> = vec![Face::new(layers[0].clone())?];
    for l in 1..layer_count {
        let (a, b) = (&layers[l - 1], &layers[l]);
        for omit in 0..n {
            let axes: Vec<usize> = (0..n).filter(|&i| i != omit).collect();
            for m in 1..=d {
                let mut vs: Vec<VertexId> = axes[..m].iter().map(|&k| a[k]).collect();
                vs.extend(axes[m - 1..].iter().map(|&k| b[k]));
                gens.push(Face::new(vs)?);
            }
        }
    }
    let complex = Complex::from_generators_named(gens, symbols);
    let zeta = (1..=t)
        .map(|j| Face::new(layers[3 * j - 3][..d].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DComplex {
        d,
        t,
        complex,
        layers,
        zeta,
    })
}
