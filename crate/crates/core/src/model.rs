//! Problem definition: a patch with material, constraints, springs, and
//! ramped load cases, plus the reduced dof bookkeeping the solver needs.

use nalgebra::Vector3;

use crate::basis::KnotVector;
use crate::error::CoreError;
use crate::material::ElasticParams;
use crate::patch::Patch;
use crate::quadrature::gauss_legendre;

/// Constitutive choice per model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaterialKind {
    /// Tension/compression split with degraded compressive response.
    Wrinkling,
    /// Undegraded plane-stress St. Venant-Kirchhoff response.
    StandardSvk,
}

/// Geometric edge of the parameter rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchEdge {
    UMin,
    UMax,
    VMin,
    VMax,
}

/// Traction magnitude along an edge, per unit reference length.
#[derive(Debug, Clone, Copy)]
pub enum TractionProfile {
    Constant(f64),
    /// base + grad * y at the reference position of the edge point.
    LinearInY { base: f64, grad: f64 },
}

impl TractionProfile {
    pub fn value_at(&self, position: &Vector3<f64>) -> f64 {
        match *self {
            TractionProfile::Constant(v) => v,
            TractionProfile::LinearInY { base, grad } => base + grad * position.y,
        }
    }
}

/// One load contribution; `ramp` scales it per load step.
#[derive(Debug, Clone)]
pub enum LoadKind {
    /// Dead surface traction per unit reference area.
    SurfaceTraction { traction: Vector3<f64> },
    /// Pressure acting along the deformed surface normal g1 x g2 / |...|,
    /// per unit current area (a follower load).
    FollowerPressure { pressure: f64 },
    /// Dead in-plane traction on a patch edge with a fixed direction.
    EdgeTraction { edge: PatchEdge, direction: Vector3<f64>, profile: TractionProfile },
    /// Dead point force applied at a parametric location.
    PointForce { param: (f64, f64), force: Vector3<f64> },
}

#[derive(Debug, Clone)]
pub struct LoadCase {
    pub kind: LoadKind,
    /// Scale factor per load step; shorter than n_steps extends with the
    /// last value, so a fully ramped load just lists its schedule once.
    pub ramp: Vec<f64>,
}

impl LoadCase {
    pub fn scale_at(&self, step: usize) -> f64 {
        if self.ramp.is_empty() {
            return 1.0;
        }
        self.ramp[step.min(self.ramp.len() - 1)]
    }
}

/// Linear grounded spring on a single dof.
#[derive(Debug, Clone, Copy)]
pub struct Spring {
    pub dof: usize,
    pub stiffness: f64,
}

/// Prescribed dof value (only homogeneous and fixed inhomogeneous supports).
#[derive(Debug, Clone, Copy)]
pub struct Constraint {
    pub dof: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Model {
    pub patch: Patch,
    pub material: ElasticParams,
    pub material_kind: MaterialKind,
    /// Per-element override of `material_kind`, indexed in discretize order
    /// (ev * n_elements_u + eu). Empty means every element uses `material_kind`.
    pub element_kinds: Vec<MaterialKind>,
    pub constraints: Vec<Constraint>,
    pub springs: Vec<Spring>,
    pub loads: Vec<LoadCase>,
}

/// Map between full dof numbering and the reduced (free) system.
#[derive(Debug, Clone)]
pub struct DofMap {
    /// full dof -> Some(reduced index) or None when constrained.
    pub to_reduced: Vec<Option<usize>>,
    /// reduced index -> full dof.
    pub to_full: Vec<usize>,
    /// Prescribed value per full dof (zero for free dofs).
    pub prescribed: Vec<f64>,
}

impl DofMap {
    pub fn n_reduced(&self) -> usize {
        self.to_full.len()
    }

    /// Gather free components of a full vector.
    pub fn reduce(&self, full: &[f64]) -> Vec<f64> {
        self.to_full.iter().map(|&d| full[d]).collect()
    }

    /// Scatter a reduced vector into a full one, keeping prescribed values.
    pub fn expand(&self, reduced: &[f64]) -> Vec<f64> {
        let mut full = self.prescribed.clone();
        for (r, &d) in self.to_full.iter().enumerate() {
            full[d] = reduced[r];
        }
        full
    }
}

impl Model {
    pub fn new(patch: Patch, material: ElasticParams, material_kind: MaterialKind) -> Self {
        Self {
            patch,
            material,
            material_kind,
            element_kinds: Vec::new(),
            constraints: Vec::new(),
            springs: Vec::new(),
            loads: Vec::new(),
        }
    }

    /// Material kind for the element at (eu, ev).
    pub fn element_kind(&self, eu: usize, ev: usize) -> MaterialKind {
        if self.element_kinds.is_empty() {
            return self.material_kind;
        }
        let (neu, _) = self.patch.n_elements();
        self.element_kinds[ev * neu + eu]
    }

    pub fn n_dof(&self) -> usize {
        self.patch.n_dof()
    }

    pub fn dof(&self, iu: usize, iv: usize, component: usize) -> usize {
        3 * self.patch.cp_index(iu, iv) + component
    }

    /// Constrain one component of every control point on an edge to zero.
    pub fn fix_edge(&mut self, edge: PatchEdge, component: usize) {
        let (ncu, ncv) = self.patch.n_cp();
        match edge {
            PatchEdge::UMin => (0..ncv).for_each(|iv| self.constrain(self.dof(0, iv, component), 0.0)),
            PatchEdge::UMax => {
                (0..ncv).for_each(|iv| self.constrain(self.dof(ncu - 1, iv, component), 0.0))
            }
            PatchEdge::VMin => (0..ncu).for_each(|iu| self.constrain(self.dof(iu, 0, component), 0.0)),
            PatchEdge::VMax => {
                (0..ncu).for_each(|iu| self.constrain(self.dof(iu, ncv - 1, component), 0.0))
            }
        }
    }

    pub fn constrain(&mut self, dof: usize, value: f64) {
        self.constraints.push(Constraint { dof, value });
    }

    pub fn add_spring(&mut self, dof: usize, stiffness: f64) {
        self.springs.push(Spring { dof, stiffness });
    }

    pub fn add_load(&mut self, kind: LoadKind, ramp: Vec<f64>) {
        self.loads.push(LoadCase { kind, ramp });
    }

    pub fn dof_map(&self) -> DofMap {
        let n = self.n_dof();
        let mut prescribed = vec![0.0; n];
        let mut constrained = vec![false; n];
        for c in &self.constraints {
            constrained[c.dof] = true;
            prescribed[c.dof] = c.value;
        }
        let mut to_reduced = vec![None; n];
        let mut to_full = Vec::new();
        for d in 0..n {
            if !constrained[d] {
                to_reduced[d] = Some(to_full.len());
                to_full.push(d);
            }
        }
        DofMap { to_reduced, to_full, prescribed }
    }

    /// Half bandwidth of the reduced stiffness matrix: widest reduced-index
    /// spread over any element's dof set.
    pub fn reduced_half_bandwidth(&self, map: &DofMap) -> usize {
        let (neu, nev) = self.patch.n_elements();
        let mut hb = 0usize;
        for ev in 0..nev {
            for eu in 0..neu {
                let cps = self.patch.element_cps(eu, ev);
                let mut lo = usize::MAX;
                let mut hi = 0usize;
                for &cp in &cps {
                    for c in 0..3 {
                        if let Some(r) = map.to_reduced[3 * cp + c] {
                            lo = lo.min(r);
                            hi = hi.max(r);
                        }
                    }
                }
                if lo != usize::MAX {
                    hb = hb.max(hi - lo);
                }
            }
        }
        hb
    }

    /// Edge quadrature for dead edge tractions: points along one parametric
    /// edge with basis values, reference tangent length scaling, and position.
    pub fn edge_quadrature(&self, edge: PatchEdge) -> Result<Vec<EdgePoint>, CoreError> {
        let (along_knots, fixed_param, along_is_u): (&KnotVector, f64, bool) = match edge {
            PatchEdge::UMin => (&self.patch.kv, 0.0, false),
            PatchEdge::UMax => (&self.patch.kv, 1.0, false),
            PatchEdge::VMin => (&self.patch.ku, 0.0, true),
            PatchEdge::VMax => (&self.patch.ku, 1.0, true),
        };
        let rule = gauss_legendre(along_knots.degree + 1)?;
        let mut points = Vec::new();
        for e in 0..along_knots.n_elements() {
            let (t0, t1) = along_knots.span_bounds(e);
            let scale = 0.5 * (t1 - t0);
            for &(xi, w) in rule {
                let t = t0 + scale * (xi + 1.0);
                let (u, v) = if along_is_u { (t, fixed_param) } else { (fixed_param, t) };
                let eu = self.patch.ku.element_of(u);
                let ev = self.patch.kv.element_of(v);
                let (n, dn) = self.patch.basis_at(eu, ev, u, v);
                let cps = self.patch.element_cps(eu, ev);
                let mut tangent = Vector3::zeros();
                let mut position = Vector3::zeros();
                let di = if along_is_u { 0 } else { 1 };
                for (k, &cp) in cps.iter().enumerate() {
                    tangent += dn[k][di] * self.patch.control_points[cp];
                    position += n[k] * self.patch.control_points[cp];
                }
                points.push(EdgePoint {
                    cps,
                    n,
                    weight: w * scale * tangent.norm(),
                    position,
                });
            }
        }
        Ok(points)
    }

    /// Basis data for a dead point force at a parametric location.
    pub fn point_basis(&self, param: (f64, f64)) -> (Vec<usize>, Vec<f64>) {
        let eu = self.patch.ku.element_of(param.0);
        let ev = self.patch.kv.element_of(param.1);
        let (n, _) = self.patch.basis_at(eu, ev, param.0, param.1);
        (self.patch.element_cps(eu, ev), n)
    }
}

/// Quadrature point on a patch edge for dead-load integration.
#[derive(Debug, Clone)]
pub struct EdgePoint {
    pub cps: Vec<usize>,
    pub n: Vec<f64>,
    /// Gauss weight times parametric scale times reference tangent length.
    pub weight: f64,
    pub position: Vector3<f64>,
}
