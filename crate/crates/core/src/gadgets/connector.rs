//! Connectors `C(ρ; ζ₁, …, ζ_t)` and their gluing into host complexes.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use super::crosspolytope::{quotient_c, QuotientC};
use super::subdivision::build_d;
use crate::collapse::scripts::script_graph_collapse;
use crate::collapse::{
    check_certificate_to, collapsible_faces, removal_order, Certificate, CollapseStep,
};
use crate::complex::{Complex, FacePairing, SymbolTable};
use crate::error::{GadgetError, ScriptError};
use crate::face::{Face, VertexId};
use crate::format::Registry;
use crate::graph::{distances_from, skeleton_adjacency};

/// A connector with its distinguished (d−1)-faces.
#[derive(Clone, Debug)]
pub struct ConnectorBlueprint {
    pub d: usize,
    pub t: usize,
    pub rho: Face,
    pub zeta: Vec<Face>,
    pub complex: Complex,
    /// The d-face of the quotient replaced by the layered simplex (t ≥ 1).
    pub xi: Option<Face>,
}

impl ConnectorBlueprint {
    /// ρ followed by ζ₁, …, ζ_t.
    pub fn distinguished(&self) -> impl Iterator<Item = &Face> {
        std::iter::once(&self.rho).chain(self.zeta.iter())
    }

    /// `C′ = 2^ρ ∪ 2^{ζ₁} ∪ … ∪ 2^{ζ_t}`.
    pub fn c_prime(&self) -> Complex {
        Complex::from_generators_named(
            self.distinguished().cloned(),
            self.complex.symbols().clone(),
        )
    }

    /// `C′ \ {ρ}`, the residue of the connector's own collapse.
    pub fn collapse_target(&self) -> Complex {
        let mut faces: BTreeSet<Face> = self.c_prime().face_set().clone();
        faces.remove(&self.rho);
        Complex::from_closed_set(faces, self.complex.symbols().clone())
    }

    pub fn registry(&self) -> Registry {
        let mut r = Registry::new();
        r.insert("rho", self.rho.clone());
        for (j, z) in self.zeta.iter().enumerate() {
            r.insert(format!("zeta{}", j + 1), z.clone());
        }
        r
    }
}

fn cached_quotient(d: usize) -> Result<Arc<QuotientC>, GadgetError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuotientC>>>> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("cache poisoned");
    if let Some(q) = cache.get(&d) {
        return Ok(q.clone());
    }
    let q = Arc::new(quotient_c(d)?);
    cache.insert(d, q.clone());
    Ok(q)
}

/// Number of d-faces containing each (d−1)-face.
fn ridge_degrees(k: &Complex, d: usize) -> HashMap<Face, usize> {
    let mut count: HashMap<Face, usize> = HashMap::new();
    for f in k.faces_of_dim(d) {
        for r in f.facets() {
            *count.entry(r).or_default() += 1;
        }
    }
    count
}

/// Vertices within skeleton distance 2 of `face`.
fn ball2(adj: &HashMap<VertexId, Vec<VertexId>>, face: &Face) -> HashSet<VertexId> {
    let mut seen: HashSet<VertexId> = face.vertices().iter().copied().collect();
    let mut queue: VecDeque<(VertexId, usize)> = face.vertices().iter().map(|&v| (v, 0)).collect();
    while let Some((v, depth)) = queue.pop_front() {
        if depth == 2 {
            continue;
        }
        for &w in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                queue.push_back((w, depth + 1));
            }
        }
    }
    seen
}

/// Ok iff every two of `faces` are at skeleton distance at least 3.
fn pairwise_distant(k: &Complex, faces: &[&Face]) -> bool {
    let adj = skeleton_adjacency(k);
    let balls: Vec<HashSet<VertexId>> = faces.iter().map(|f| ball2(&adj, f)).collect();
    for (i, ball) in balls.iter().enumerate() {
        for other in &faces[i + 1..] {
            if other.vertices().iter().any(|v| ball.contains(v)) {
                return false;
            }
        }
    }
    true
}

/// Builds `C(ρ; ζ₁, …, ζ_t)`; for t = 0 this is the quotient itself.
pub fn build_connector(d: usize, t: usize) -> Result<ConnectorBlueprint, GadgetError> {
    let q = cached_quotient(d)?;
    if t == 0 {
        return Ok(ConnectorBlueprint {
            d,
            t,
            rho: q.rho.clone(),
            zeta: Vec::new(),
            complex: q.complex.clone(),
            xi: None,
        });
    }
    let c = &q.complex;
    let degrees = ridge_degrees(c, d);
    let adj = skeleton_adjacency(c);
    let dist = distances_from(&adj, q.rho.vertices());
    let mut candidates: Vec<(usize, &Face)> = c
        .faces_of_dim(d)
        .filter(|xi| {
            !xi.vertices().iter().any(|v| q.rho.contains_vertex(*v))
                && xi.facets().all(|r| degrees.get(&r) == Some(&2))
        })
        .map(|xi| {
            let m = xi
                .vertices()
                .iter()
                .map(|v| dist.get(v).copied().unwrap_or(usize::MAX))
                .min();
            (m.unwrap_or(0), xi)
        })
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));

    let dc = build_d(d, t)?;
    let outer = dc.outer().to_vec();
    for (_, xi) in candidates {
        let offset = c.id_bound() as u32;
        let map = |v: VertexId| match outer.iter().position(|&o| o == v) {
            Some(i) => xi.vertices()[i],
            None => VertexId(offset + v.0),
        };
        let mut symbols: SymbolTable = c.symbols().clone();
        // the outer layer has the largest ids, so inner ids shift densely
        for i in 0..dc.complex.id_bound() - outer.len() {
            let v = VertexId(i as u32);
            let name = dc.complex.symbols().name(v).map(str::to_string);
            let id = symbols.push(name)?;
            debug_assert_eq!(id, map(v));
        }
        let mut faces: BTreeSet<Face> = c.face_set().clone();
        faces.remove(xi);
        for f in dc.complex.faces() {
            faces.insert(f.map(map)?);
        }
        let complex = Complex::from_closed_set(faces, symbols);
        let zeta: Vec<Face> = dc
            .zeta
            .iter()
            .map(|z| z.map(map))
            .collect::<Result<_, _>>()?;
        let mut all: Vec<&Face> = vec![&q.rho];
        all.extend(zeta.iter());
        if pairwise_distant(&complex, &all) {
            return Ok(ConnectorBlueprint {
                d,
                t,
                rho: q.rho.clone(),
                zeta,
                complex,
                xi: Some(xi.clone()),
            });
        }
    }
    Err(GadgetError::Construction(format!(
        "no interior d-face gives distant faces for d = {d}, t = {t}"
    )))
}

/// A certificate for `C ↘ C′ \ {ρ}`.
///
/// The glued ridges of the quotient lie in more than two d-faces, so the
/// graph collapse runs onto `C′ \ {ρ}` plus the closure of those ridges, and
/// the leftover ridge faces are then removed as maximal faces.
pub fn connector_certificate(bp: &ConnectorBlueprint) -> Result<Certificate, GadgetError> {
    let d = bp.d;
    let target = bp.collapse_target();
    let mut stop: BTreeSet<Face> = target.face_set().clone();
    for (ridge, &count) in &ridge_degrees(&bp.complex, d) {
        if count > 2 {
            stop.extend(ridge.subfaces());
        }
    }
    let stop = Complex::from_closed_set(stop, bp.complex.symbols().clone());
    let mut cert = script_graph_collapse(&bp.complex, &stop, &bp.rho, d)?;
    let extra: Vec<&Face> = stop.faces().filter(|f| !target.contains(f)).collect();
    for f in removal_order(extra) {
        cert.push_with_tau(f.clone(), f);
    }
    check_certificate_to(&bp.complex, &cert, &target).map_err(ScriptError::from)?;
    Ok(cert)
}

/// A connector blueprint with its certificate, built once per `(d, t)`.
#[derive(Debug)]
pub struct CachedConnector {
    pub blueprint: ConnectorBlueprint,
    pub certificate: Certificate,
}

pub fn cached_connector(d: usize, t: usize) -> Result<Arc<CachedConnector>, GadgetError> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<CachedConnector>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache poisoned").get(&(d, t)) {
        return Ok(c.clone());
    }
    let blueprint = build_connector(d, t)?;
    if cfg!(debug_assertions) {
        let free = collapsible_faces(&blueprint.complex, d);
        if free != [blueprint.rho.clone()] {
            return Err(GadgetError::Construction(format!(
                "connector d = {d}, t = {t} has {} d-collapsible faces",
                free.len()
            )));
        }
    }
    let certificate = connector_certificate(&blueprint)?;
    let entry = Arc::new(CachedConnector {
        blueprint,
        certificate,
    });
    cache
        .lock()
        .expect("cache poisoned")
        .insert((d, t), entry.clone());
    Ok(entry)
}

/// Where to attach one connector: ρ is identified with `sigma`, ζ_j with `gammas[j]`.
#[derive(Clone, Debug)]
pub struct ConnectorSpec {
    /// Prefix for the connector's vertex names.
    pub prefix: String,
    pub sigma: Face,
    pub gammas: Vec<Face>,
}

/// The image of a glued connector inside the result complex.
#[derive(Clone, Debug)]
pub struct GluedConnector {
    pub sigma: Face,
    pub gammas: Vec<Face>,
    pub t: usize,
    /// Every face of the connector's image, including `2^σ` and the `2^γ_j`.
    pub image: BTreeSet<Face>,
    /// The connector's own collapse, valid in the result once σ is maximal.
    pub certificate: Certificate,
}

/// Glues one connector into `host` along σ and γ₁, …, γ_t.
pub fn glue_connector(
    host: &Complex,
    d: usize,
    sigma: &Face,
    gammas: &[Face],
) -> Result<(Complex, GluedConnector), GadgetError> {
    let spec = ConnectorSpec {
        prefix: "c.".into(),
        sigma: sigma.clone(),
        gammas: gammas.to_vec(),
    };
    let (k, mut glued) = glue_connectors(host, d, &[spec])?;
    Ok((k, glued.pop().expect("one connector")))
}

/// Glues several connectors into `host` at once, pairing faces by sorted
/// vertex order. Host vertex ids are preserved.
pub fn glue_connectors(
    host: &Complex,
    d: usize,
    specs: &[ConnectorSpec],
) -> Result<(Complex, Vec<GluedConnector>), GadgetError> {
    for spec in specs {
        let mut seen = HashSet::new();
        for f in std::iter::once(&spec.sigma).chain(spec.gammas.iter()) {
            if f.len() != d || !host.contains(f) {
                return Err(GadgetError::Domain(format!(
                    "{} is not a (d-1)-face of the host",
                    host.face_tokens(f)
                )));
            }
            if !seen.insert(f) {
                return Err(GadgetError::Domain(format!(
                    "{} attached twice",
                    host.face_tokens(f)
                )));
            }
        }
    }
    let built: Vec<Arc<CachedConnector>> = specs
        .iter()
        .map(|s| cached_connector(d, s.gammas.len()))
        .collect::<Result<_, _>>()?;

    let mut symbols = host.symbols().clone();
    symbols.reserve_through(VertexId(host.id_bound().saturating_sub(1) as u32));
    let mut faces: BTreeSet<Face> = host.face_set().clone();
    let mut pairing = FacePairing::new();
    let mut offsets = Vec::with_capacity(specs.len());
    for (spec, c) in specs.iter().zip(&built) {
        let bp = &c.blueprint;
        let offset = symbols.len() as u32;
        offsets.push(offset);
        for i in 0..bp.complex.id_bound() {
            let name = bp.complex.symbols().name(VertexId(i as u32)).map(|n| {
                let mut candidate = format!("{}{n}", spec.prefix);
                while symbols.lookup(&candidate).is_some() {
                    candidate.push('\'');
                }
                candidate
            });
            symbols.push(name)?;
        }
        let shift = |f: &Face| {
            f.map(|v| VertexId(v.0 + offset))
                .expect("shift is injective")
        };
        faces.extend(bp.complex.faces().map(shift));
        pairing.push_sorted(shift(&bp.rho), spec.sigma.clone())?;
        for (z, g) in bp.zeta.iter().zip(&spec.gammas) {
            pairing.push_sorted(shift(z), g.clone())?;
        }
    }
    let union = Complex::from_closed_set(faces, symbols);
    let (glued, map) = union.glue_with_map(&pairing)?;
    if (0..host.id_bound()).any(|i| map[i].index() != i) {
        return Err(GadgetError::Construction(
            "gluing merged host vertices".into(),
        ));
    }

    let mut out = Vec::with_capacity(specs.len());
    for ((spec, c), offset) in specs.iter().zip(&built).zip(offsets) {
        let to_new = |v: VertexId| map[(v.0 + offset) as usize];
        let image: BTreeSet<Face> = c
            .blueprint
            .complex
            .faces()
            .map(|f| f.map(to_new))
            .collect::<Result<_, _>>()?;
        let mut certificate = Certificate::new(d);
        for s in &c.certificate.steps {
            let sigma = s.sigma.map(to_new)?;
            let step = match &s.expected_tau {
                Some(t) => CollapseStep::with_tau(sigma, t.map(to_new)?),
                None => CollapseStep::new(sigma),
            };
            certificate.steps.push(step);
        }
        out.push(GluedConnector {
            sigma: spec.sigma.clone(),
            gammas: spec.gammas.clone(),
            t: spec.gammas.len(),
            image,
            certificate,
        });
    }
    Ok((glued, out))
}
