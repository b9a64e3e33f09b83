//! A d-collapsible complex with a bad d-collapsible face (d ≥ 3).
//!
//! `B = 2^S ∪ C_glued(ι; α₁, …, α_t)` over `S = {p, q₁, …, q_{d−1}, r₁, …, r_d}`.
//! Collapsing `σ_B = {r₁, …, r_d}` first leaves no d-collapsible face, while
//! collapsing the liberation faces `λ_i` first leads all the way down.

use std::collections::BTreeSet;

use super::connector::{glue_connector, GluedConnector};
use super::simplicial::residue_steps;
use crate::collapse::scripts::script_subcomplex_collapse;
use crate::collapse::{check_certificate, check_certificate_to, Certificate};
use crate::complex::{Complex, SymbolTable};
use crate::error::{GadgetError, ScriptError};
use crate::face::{Face, VertexId};
use crate::format::Registry;

#[derive(Clone, Debug)]
pub struct BadComplex {
    pub d: usize,
    pub complex: Complex,
    pub simplex: Face,
    pub iota: Face,
    pub lambda: Vec<Face>,
    pub sigma_b: Face,
    pub alpha: Vec<Face>,
    pub connector: GluedConnector,
}

/// A collapse of `B` to nothing, split at `A` and at `R \ {ι}`.
#[derive(Clone, Debug)]
pub struct BadCertificate {
    pub certificate: Certificate,
    /// Steps taking `B` to `A`.
    pub to_a: usize,
    /// Steps taking `B` to `R \ {ι}`.
    pub to_r: usize,
}

fn ids(range: impl IntoIterator<Item = usize>) -> Face {
    Face::new(range.into_iter().map(|i| VertexId(i as u32)).collect()).expect("distinct ids")
}

/// Vertex ids: `p` = 0, `q_i` = i, `r_i` = d − 1 + i.
pub fn build_bad_complex(d: usize) -> Result<BadComplex, GadgetError> {
    if d < 3 {
        return Err(GadgetError::Domain(format!(
            "no bad complex exists for d = {d} < 3"
        )));
    }
    let mut symbols = SymbolTable::new();
    symbols.push_named("p");
    for i in 1..d {
        symbols.push_named(format!("q{i}"));
    }
    for i in 1..=d {
        symbols.push_named(format!("r{i}"));
    }
    let simplex = ids(0..2 * d);
    let host = Complex::from_generators_named([simplex.clone()], symbols);
    let iota = ids(0..d);
    let qs = ids(1..d);
    let lambda: Vec<Face> = (d..2 * d)
        .map(|r| qs.with_vertex(VertexId(r as u32)))
        .collect();
    let sigma_b = ids(d..2 * d);
    let alpha: Vec<Face> = host
        .faces_of_dim(d - 1)
        .filter(|f| **f != iota && **f != sigma_b && !lambda.contains(f))
        .cloned()
        .collect();
    let (complex, connector) = glue_connector(&host, d, &iota, &alpha)?;
    Ok(BadComplex {
        d,
        complex,
        simplex,
        iota,
        lambda,
        sigma_b,
        alpha,
        connector,
    })
}

impl BadComplex {
    pub fn registry(&self) -> Registry {
        let mut r = Registry::new();
        r.insert("iota", self.iota.clone());
        for (i, l) in self.lambda.iter().enumerate() {
            r.insert(format!("lambda{}", i + 1), l.clone());
        }
        r.insert("sigma_b", self.sigma_b.clone());
        for (i, a) in self.alpha.iter().enumerate() {
            r.insert(format!("alpha{}", i + 1), a.clone());
        }
        r
    }

    fn qs(&self) -> Face {
        self.iota.without_vertex(VertexId(0)).expect("d >= 3")
    }

    /// `R`: faces of `2^S` that contain all q's only inside ι.
    pub fn r_complex(&self) -> Complex {
        let qs = self.qs();
        let faces: BTreeSet<Face> = self
            .simplex
            .subfaces()
            .filter(|f| !qs.is_subset_of(f) || f.is_subset_of(&self.iota))
            .collect();
        Complex::from_face_set(faces)
            .expect("R is closed")
            .with_symbols(self.complex.symbols().clone())
    }

    /// `A = R ∪ C_glued(ι; α₁, …, α_t)`.
    pub fn a_complex(&self) -> Complex {
        let s: BTreeSet<Face> = self.simplex.subfaces().collect();
        let r = self.r_complex();
        let faces: Vec<Face> = self
            .complex
            .faces()
            .filter(|f| !s.contains(*f) || r.contains(f))
            .cloned()
            .collect();
        Complex::from_face_set(faces)
            .expect("A is closed")
            .with_symbols(self.complex.symbols().clone())
    }

    /// `B ↘ A ↘ R \ {ι} ↘ ∅`, each stage checked.
    pub fn certificate(&self) -> Result<BadCertificate, GadgetError> {
        let d = self.d;
        let inner = Certificate::from_faces(d, self.lambda.iter().cloned());
        let simplex = Complex::from_generators([self.simplex.clone()]);
        let mut cert =
            script_subcomplex_collapse(&self.complex, &simplex, &self.r_complex(), &inner)?;
        let to_a = cert.len();
        cert.extend(self.connector.certificate.clone());
        let to_r = cert.len();
        let mut r_minus = self.r_complex().face_set().clone();
        r_minus.remove(&self.iota);
        let r_minus = Complex::from_face_set(r_minus)?;
        check_certificate_to(&self.complex, &cert, &r_minus).map_err(ScriptError::from)?;
        cert.extend(residue_steps(&self.simplex, &self.qs(), None, d));
        check_certificate(&self.complex, &cert).map_err(ScriptError::from)?;
        Ok(BadCertificate {
            certificate: cert,
            to_a,
            to_r,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{collapsible_faces, elementary_collapse, replay_certificate};

    #[test]
    fn bad3_free_faces() {
        let b = build_bad_complex(3).unwrap();
        assert_eq!(b.alpha.len(), 15);
        let mut expected = b.lambda.clone();
        expected.push(b.sigma_b.clone());
        expected.sort();
        assert_eq!(collapsible_faces(&b.complex, 3), expected);
        let stuck = elementary_collapse(&b.complex, &b.sigma_b, 3).unwrap();
        assert!(collapsible_faces(&stuck, 3).is_empty());
    }

    #[test]
    fn bad3_chain_certificate() {
        let b = build_bad_complex(3).unwrap();
        let c = b.certificate().unwrap();
        let prefix = Certificate {
            d: 3,
            steps: c.certificate.steps[..c.to_a].to_vec(),
        };
        assert_eq!(
            replay_certificate(&b.complex, &prefix).unwrap(),
            b.a_complex()
        );
    }

    #[test]
    fn small_d_rejected() {
        assert!(build_bad_complex(2).is_err());
    }
}
