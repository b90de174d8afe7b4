//! The toric quotient pipeline: unstable faces from the seed equations, the
//! quotient fan under the kernel of the class-group embedding, the torus
//! action matrix, non-normal loci and component-intersection orbits.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use super::component::{ComponentData, ToricModel};
use super::DegreeTable;
use crate::cyclotomic::CycNum;
use crate::intmat::IntMatrix;
use crate::lattice::{
    dot, face_duality, orbit_is_normal, AffineSemigroup, Cone, Fan, FanError, IVec,
    SemigroupError,
};
use crate::poly::{LaurentPoly, Monomial};
use crate::radical::{solve_multiplicative, Radical};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineError {
    UnstableSetNotClosed,
    KernelRankWrong { got: usize },
    KernelNotSurjective,
    FaceImageCollapses,
    Fan(FanError),
    Semigroup(SemigroupError),
    NonNormalSetNotClosed,
    IntersectionUnresolved(String),
    MonomialForcedWhole(String),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::UnstableSetNotClosed => {
                write!(f, "unstable face set is not closed under face inclusion")
            }
            PipelineError::KernelRankWrong { got } => {
                write!(f, "kernel of the class-group embedding has rank {got}, expected 2")
            }
            PipelineError::KernelNotSurjective => {
                write!(f, "kernel basis does not surject onto Z^2")
            }
            PipelineError::FaceImageCollapses => {
                write!(f, "a surviving face drops dimension under the quotient map")
            }
            PipelineError::Fan(e) => write!(f, "{e}"),
            PipelineError::Semigroup(e) => write!(f, "{e}"),
            PipelineError::NonNormalSetNotClosed => {
                write!(f, "non-normal orbit set is not closed under face inclusion")
            }
            PipelineError::IntersectionUnresolved(r) => {
                write!(f, "cannot resolve forced vanishing from relation {r}")
            }
            PipelineError::MonomialForcedWhole(r) => {
                write!(f, "relation {r} reduces to a monomial in several variables")
            }
        }
    }
}

impl From<FanError> for PipelineError {
    fn from(e: FanError) -> Self {
        PipelineError::Fan(e)
    }
}

impl From<SemigroupError> for PipelineError {
    fn from(e: SemigroupError) -> Self {
        PipelineError::Semigroup(e)
    }
}

/// Output of the quotient pipeline for one toric component.
#[derive(Clone, Debug)]
pub struct QuotientData {
    /// Rows form a basis of the kernel of the class-group embedding and
    /// define the projection to the quotient cocharacter lattice.
    pub q_matrix: Vec<IVec>,
    /// `torus_matrix * q^T`: columns are the characters of the torus action
    /// on the quotient surface.
    pub t_action: [[i64; 2]; 2],
    pub fan: Fan,
    /// Faces of sigma surviving stability, with their vanishing coordinate
    /// sets and quotient images.
    pub surviving: Vec<SurvivingFace>,
    /// Minimal unstable faces (each listed with its vanishing set).
    pub unstable_minimal: Vec<(Cone, BTreeSet<String>)>,
}

#[derive(Clone, Debug)]
pub struct SurvivingFace {
    pub face: Cone,
    pub vanishing: BTreeSet<String>,
    pub image: Cone,
}

impl QuotientData {
    pub fn apply_q(&self, v: &IVec) -> IVec {
        self.q_matrix.iter().map(|row| dot(row, v)).collect()
    }
}

/// Coordinates of the component that appear in the product and survive; the
/// product vanishes identically when it touches a zeroed coordinate.
fn product_on_component(
    product: &Monomial,
    c: &ComponentData,
) -> Option<BTreeSet<String>> {
    let names: BTreeSet<String> = product.exps().map(|(v, _)| v.to_string()).collect();
    if names.iter().any(|n| c.zeros.contains(n)) {
        return None;
    }
    Some(names)
}

/// Unstable-face analysis plus the quotient fan and torus action.
pub fn toric_quotient_pipeline(
    c: &ComponentData,
    model: &ToricModel,
    unstable_products: &[Monomial],
) -> Result<QuotientData, PipelineError> {
    // Products that do not vanish identically restrict the component.
    let conditions: Vec<BTreeSet<String>> = unstable_products
        .iter()
        .filter_map(|p| product_on_component(p, c))
        .collect();

    // Classify the faces of sigma.
    let mut surviving_faces: Vec<(Cone, BTreeSet<String>)> = Vec::new();
    let mut unstable_faces: Vec<(Cone, BTreeSet<String>)> = Vec::new();
    for face in model.sigma.faces() {
        let vanishing: BTreeSet<String> = model
            .labelled_points()
            .iter()
            .filter(|(_, v)| face.rays().iter().any(|r| dot(v, r) != 0))
            .map(|(l, _)| l.clone())
            .collect();
        let unstable = conditions
            .iter()
            .all(|cond| cond.iter().any(|g| vanishing.contains(g)));
        if unstable {
            unstable_faces.push((face, vanishing));
        } else {
            surviving_faces.push((face, vanishing));
        }
    }
    // The unstable set must be closed upward (removing a cone removes
    // everything containing it).
    for (uf, _) in &unstable_faces {
        for (sf, _) in &surviving_faces {
            if uf.is_face_of(sf) {
                return Err(PipelineError::UnstableSetNotClosed);
            }
        }
    }
    let unstable_minimal: Vec<(Cone, BTreeSet<String>)> = unstable_faces
        .iter()
        .filter(|(uf, _)| {
            !unstable_faces
                .iter()
                .any(|(other, _)| other != uf && other.is_face_of(uf))
        })
        .cloned()
        .collect();

    // Kernel of the class-group embedding, as rows, with surjectivity check.
    let p_mat = IntMatrix::from_rows_i64(&model.pic_matrix);
    let kernel = p_mat.right_kernel_basis();
    if kernel.cols != 2 {
        return Err(PipelineError::KernelRankWrong { got: kernel.cols });
    }
    let q_matrix: Vec<IVec> = (0..2)
        .map(|j| {
            (0..model.ambient)
                .map(|i| kernel.at(i, j).to_i64().expect("small entries"))
                .collect()
        })
        .collect();
    let q_int = IntMatrix::from_rows_i64(&q_matrix);
    if q_int.snf().diagonal().iter().any(|d| d.to_i64() != Some(1)) {
        return Err(PipelineError::KernelNotSurjective);
    }
    debug_assert!(model
        .pic_matrix
        .iter()
        .all(|p| q_matrix.iter().all(|q| dot(p, q) == 0)));

    // Quotient images of the surviving faces.
    let mut surviving = Vec::new();
    for (face, vanishing) in surviving_faces {
        let image_rays: Vec<IVec> = face
            .rays()
            .iter()
            .map(|r| q_matrix.iter().map(|row| dot(row, r)).collect())
            .collect();
        let image = Cone::new(2, image_rays).map_err(|_| PipelineError::FaceImageCollapses)?;
        if image.dim() != face.dim() {
            return Err(PipelineError::FaceImageCollapses);
        }
        surviving.push(SurvivingFace {
            face,
            vanishing,
            image,
        });
    }
    // Maximal images form the fan; all other images must be faces of it.
    let max_dim = surviving.iter().map(|s| s.image.dim()).max().unwrap_or(0);
    let mut max_cones: Vec<Cone> = Vec::new();
    for s in &surviving {
        if s.image.dim() == max_dim && !max_cones.iter().any(|c| c.equals_as_cone(&s.image)) {
            max_cones.push(s.image.clone());
        }
    }
    let fan = Fan::new(2, max_cones)?;
    for s in &surviving {
        if !fan.contains_cone(&s.image) {
            return Err(PipelineError::Fan(FanError::NoMatchingFace));
        }
    }

    // Torus action matrix: torus_matrix * q^T.
    let mut t_action = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            t_action[i][j] = dot(&model.torus_matrix[i], &q_matrix[j]);
        }
    }

    Ok(QuotientData {
        q_matrix,
        t_action,
        fan,
        surviving,
        unstable_minimal,
    })
}

/// Per-orbit normality of the stable locus, decided by the
/// semigroup-equality criterion on each surviving face.
#[derive(Clone, Debug)]
pub struct NonNormalReport {
    /// One entry per surviving face, parallel to `quotient.surviving`.
    pub normal: Vec<bool>,
    /// Quotient images of the minimal non-normal faces. The non-normal
    /// orbit set is closed under face inclusion, so these generate it.
    pub minimal_non_normal: Vec<Cone>,
}

impl NonNormalReport {
    /// The minimal non-normal cones that are rays, as primitive vectors.
    pub fn minimal_rays(&self) -> Vec<IVec> {
        let mut out: Vec<IVec> = self
            .minimal_non_normal
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect();
        out.sort();
        out
    }
}

/// Tests every surviving orbit for normality via the semigroup-equality
/// criterion and reports the minimal non-normal faces of the quotient fan.
pub fn nonnormal_locus(
    model: &ToricModel,
    quotient: &QuotientData,
) -> Result<NonNormalReport, PipelineError> {
    let semigroup = AffineSemigroup::new(model.ambient, model.points.clone());
    let mut normal: Vec<bool> = Vec::new();
    for s in quotient.surviving.iter() {
        let f = face_duality(&model.sigma, &s.face).map_err(SemigroupError::Cone)?;
        normal.push(orbit_is_normal(&semigroup, &f)?);
    }
    // The non-normal locus is closed, so the flags must be upward closed
    // under face inclusion.
    for (i, &ni) in normal.iter().enumerate() {
        if ni {
            continue;
        }
        for (j, &nj) in normal.iter().enumerate() {
            if quotient.surviving[i].face.is_face_of(&quotient.surviving[j].face) && nj {
                return Err(PipelineError::NonNormalSetNotClosed);
            }
        }
    }
    let non_normal: Vec<usize> = normal
        .iter()
        .enumerate()
        .filter(|(_, n)| !**n)
        .map(|(i, _)| i)
        .collect();
    let mut minimal_non_normal = Vec::new();
    for &i in &non_normal {
        let minimal = !non_normal.iter().any(|&j| {
            j != i && quotient.surviving[j].face.is_face_of(&quotient.surviving[i].face)
        });
        if minimal {
            minimal_non_normal.push(quotient.surviving[i].image.clone());
        }
    }
    Ok(NonNormalReport {
        normal,
        minimal_non_normal,
    })
}

/// Forced vanishing set of the intersection with another component: the
/// other component's zeroed coordinates, saturated by relations that reduce
/// to a pure power of one surviving variable.
pub fn intersection_vanishing(
    base: &ComponentData,
    other: &ComponentData,
    degrees: &DegreeTable,
) -> Result<BTreeSet<String>, PipelineError> {
    use alloc::format;
    let survivors = base.survivors(degrees);
    let mut vanishing: BTreeSet<String> = survivors
        .iter()
        .filter(|g| other.zeros.contains(*g))
        .cloned()
        .collect();
    let all_relations: Vec<&LaurentPoly> = other
        .relations
        .iter()
        .chain(base.relations.iter())
        .collect();
    loop {
        let mut grew = false;
        let mut stuck: Option<String> = None;
        for rel in &all_relations {
            let zeroed: alloc::collections::BTreeMap<String, LaurentPoly> = base
                .zeros
                .iter()
                .chain(other.zeros.iter())
                .chain(vanishing.iter())
                .map(|n| (n.clone(), LaurentPoly::zero()))
                .collect();
            let reduced = rel.substitute(&zeroed);
            if reduced.is_zero() {
                continue;
            }
            if let Some((m, _)) = reduced.as_monomial() {
                let vars: Vec<String> = m.exps().map(|(v, _)| v.to_string()).collect();
                match vars.len() {
                    0 => {
                        return Err(PipelineError::IntersectionUnresolved(format!("{rel}")));
                    }
                    1 => {
                        if vanishing.insert(vars[0].clone()) {
                            grew = true;
                        }
                    }
                    _ => stuck = Some(format!("{rel}")),
                }
            }
        }
        if !grew {
            if let Some(r) = stuck {
                return Err(PipelineError::MonomialForcedWhole(r));
            }
            return Ok(vanishing);
        }
    }
}

/// The quotient-fan cone carrying the dense orbit of the intersection with
/// another component.
pub fn component_intersection_orbit(
    base: &ComponentData,
    model: &ToricModel,
    quotient: &QuotientData,
    other: &ComponentData,
    degrees: &DegreeTable,
) -> Result<Cone, PipelineError> {
    let vanishing = intersection_vanishing(base, other, degrees)?;
    let tau = crate::lattice::orbit_face_of_vanishing(
        &model.labelled_points(),
        &vanishing,
        &model.sigma,
    )?;
    let image_rays: Vec<IVec> = tau.rays().iter().map(|r| quotient.apply_q(r)).collect();
    if image_rays.is_empty() {
        return Ok(Cone::zero(2));
    }
    Cone::new(2, image_rays).map_err(|_| PipelineError::FaceImageCollapses)
}

/// Report of the hypersurface-component checks.
#[derive(Clone, Debug)]
pub struct ZpReport {
    /// Rescaling factors normalising the relation to `x^3 - y z^2 + w^2 t`.
    pub rescale: Vec<(String, CycNum)>,
    /// Torus weights of the three plane coordinates, as columns.
    pub plane_weights: [(i64, i64); 3],
    /// Setting the exceptional character to zero leaves the cuspidal cubic.
    pub restriction_is_cubic: bool,
    /// The line `y = 0` meets the cubic in a single triple point.
    pub flex_line_triple: bool,
    /// Both curve and all partials vanish at the cusp point.
    pub cusp_checks: bool,
}

/// Verifies the hypersurface component: exhibits an explicit rescaling onto
/// the normal form `x^3 - y z^2 + w^2 t = 0` and checks the induced plane
/// geometry (cubic restriction, flex line, cusp).
pub fn zp_checks(c: &ComponentData, degrees: &DegreeTable) -> Result<ZpReport, PipelineError> {
    use alloc::format;
    let survivors = c.survivors(degrees);
    // Coordinates play the roles (x, y, z, w, t) in degree-table order.
    assert_eq!(survivors.len(), 5, "hypersurface has five coordinates");
    assert_eq!(c.relations.len(), 1);
    let rel = &c.relations[0];
    let (x, y, z, w, t) = (
        survivors[0].as_str(),
        survivors[1].as_str(),
        survivors[2].as_str(),
        survivors[3].as_str(),
        survivors[4].as_str(),
    );

    // Normal form x^3 - y z^2 + w^2 t with coefficients (1, -1, 1).
    let target: Vec<(Monomial, CycNum)> = vec![
        (Monomial::var(x, 3), CycNum::one()),
        (
            Monomial::var(y, 1).mul(&Monomial::var(z, 2)),
            -CycNum::one(),
        ),
        (
            Monomial::var(w, 2).mul(&Monomial::var(t, 1)),
            CycNum::one(),
        ),
    ];
    // Solve a^(mi - mj) = (ti * cj) / (tj * ci) for the scaling point.
    let coeff_of = |m: &Monomial| -> CycNum { rel.coeff(m) };
    let mut diffs: Vec<IVec> = Vec::new();
    let mut lambdas: Vec<Radical> = Vec::new();
    for k in 1..target.len() {
        let (m0, t0) = &target[0];
        let (mk, tk) = &target[k];
        let c0 = coeff_of(m0);
        let ck = coeff_of(mk);
        if c0.is_zero() || ck.is_zero() {
            return Err(PipelineError::IntersectionUnresolved(format!("{rel}")));
        }
        let mut d = vec![0i64; survivors.len()];
        for (v, e) in m0.exps() {
            d[survivors.iter().position(|s| s == v).unwrap()] += e;
        }
        for (v, e) in mk.exps() {
            d[survivors.iter().position(|s| s == v).unwrap()] -= e;
        }
        let lam = (t0 * &ck)
            .checked_div(&(tk * &c0))
            .expect("nonzero coefficients");
        let rad =
            Radical::from_cycnum(&lam).ok_or_else(|| {
                PipelineError::IntersectionUnresolved(format!("{rel}"))
            })?;
        diffs.push(d);
        lambdas.push(rad);
    }
    let a = solve_multiplicative(&diffs, &lambdas)
        .ok_or_else(|| PipelineError::IntersectionUnresolved(format!("{rel}")))?;
    let rescale: Vec<(String, CycNum)> = survivors
        .iter()
        .zip(a.iter())
        .map(|(s, r)| (s.clone(), r.to_cycnum()))
        .collect();
    // Verify: substituting w_g -> a_g * w_g turns the relation into a
    // scalar multiple of the normal form.
    let images: alloc::collections::BTreeMap<String, LaurentPoly> = rescale
        .iter()
        .map(|(g, v)| {
            (
                g.clone(),
                LaurentPoly::from_term(Monomial::var(g, 1), v.clone()),
            )
        })
        .collect();
    let substituted = rel.substitute(&images);
    let target_poly = LaurentPoly::from_terms(target.clone());
    let scale = substituted.coeff(&Monomial::var(x, 3));
    if substituted != target_poly.scale(&scale) || scale.is_zero() {
        return Err(PipelineError::IntersectionUnresolved(format!("{rel}")));
    }

    let plane_weights = [
        degrees.torus(x).unwrap(),
        degrees.torus(y).unwrap(),
        degrees.torus(z).unwrap(),
    ];

    // Restrict the normal form to t = 0: the cuspidal plane cubic.
    let t_zero: alloc::collections::BTreeMap<String, LaurentPoly> =
        [(t.to_string(), LaurentPoly::zero())].into_iter().collect();
    let cubic = target_poly.substitute(&t_zero);
    let cubic_expected = LaurentPoly::from_terms(vec![
        (Monomial::var(x, 3), CycNum::one()),
        (
            Monomial::var(y, 1).mul(&Monomial::var(z, 2)),
            -CycNum::one(),
        ),
    ]);
    let restriction_is_cubic = cubic == cubic_expected;

    // Flex line: setting y = 0 leaves exactly x^3 (triple point at x = 0).
    let y_zero: alloc::collections::BTreeMap<String, LaurentPoly> =
        [(y.to_string(), LaurentPoly::zero())].into_iter().collect();
    let on_line = cubic.substitute(&y_zero);
    let flex_line_triple = on_line
        .as_monomial()
        .map(|(m, _)| m.exp(x) == 3 && m.exps().count() == 1)
        .unwrap_or(false);

    // Cusp at x = z = 0, i.e. (x : y : z) = (0 : 1 : 0): the curve and all
    // three partials vanish.
    let cusp: alloc::collections::BTreeMap<String, CycNum> = [
        (x.to_string(), CycNum::zero()),
        (y.to_string(), CycNum::one()),
        (z.to_string(), CycNum::zero()),
    ]
    .into_iter()
    .collect();
    let mut cusp_checks = cubic.evaluate(&cusp).unwrap().is_zero();
    for v in [x, y, z] {
        cusp_checks &= cubic
            .partial_derivative(v)
            .evaluate(&cusp)
            .unwrap()
            .is_zero();
    }

    Ok(ZpReport {
        rescale,
        plane_weights,
        restriction_is_cubic,
        flex_line_triple,
        cusp_checks,
    })
}
