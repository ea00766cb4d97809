//! Right derived functors of `F = Hom_Λ(A, -)`, the comparison isomorphism
//! `c^n`, connecting homomorphisms, the dimension-shifting isomorphism `d^n`,
//! and checks relating them.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{FunctorSpec, LambdaModule, ModuleMap, SesModules};
use crate::choice::Choice;
use crate::complex::{
    cohomology, induced_on_cohomology, snake_delta_class, snake_delta_matrix,
    CohomologyPresentation, ModuleSesOfComplexes, SesOfComplexes,
};
use crate::error::{Error, Result};
use crate::linalg::{image_basis, quotient, Matrix, QuotientPresentation};
use crate::rational::Rational;
use crate::resolution::{
    horseshoe, lemma_b_resolution, lift_resolution_map, split_resolution, Resolution,
    ResolutionRegistry, ResolutionSplitting,
};

/// `(-1)^{(n² + n)/2}`.
pub fn sign_factor(n: usize) -> i8 {
    if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed_identity(sign: i8, n: usize) -> Matrix {
    Matrix::identity(n).scale(&Rational::from_int(sign as i64))
}

/// `R^n F(M)` with its fixed basis.
#[derive(Clone, Debug)]
pub struct DerivedFunctorValue {
    pub functor: FunctorSpec,
    pub module: LambdaModule,
    pub degree: usize,
    pub presentation: CohomologyPresentation,
}

impl DerivedFunctorValue {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }
}

/// `∂⁰` on all of `FB`, the presentation of `FB / im FC`, and the induced
/// map `∂̄⁰` on that quotient.
#[derive(Clone, Debug)]
pub struct ConnectingZero {
    pub full: Matrix,
    pub domain: QuotientPresentation,
    pub bar: Matrix,
}

/// A functor together with the registry that fixes every `R^n F` basis.
#[derive(Clone, Debug)]
pub struct DerivedEngine {
    functor: FunctorSpec,
    registry: Arc<ResolutionRegistry>,
}

impl DerivedEngine {
    pub fn new(functor: FunctorSpec) -> Self {
        Self::with_registry(functor, Arc::new(ResolutionRegistry::new()))
    }

    pub fn with_registry(functor: FunctorSpec, registry: Arc<ResolutionRegistry>) -> Self {
        DerivedEngine { functor, registry }
    }

    pub fn functor(&self) -> &FunctorSpec {
        &self.functor
    }

    pub fn registry(&self) -> &Arc<ResolutionRegistry> {
        &self.registry
    }

    /// The registry resolution, long enough for `H^degree` and one step past.
    pub fn chosen_resolution(
        &self,
        module: &LambdaModule,
        degree: usize,
    ) -> Result<Arc<Resolution>> {
        self.registry.resolution(module, degree + 2)
    }

    fn cohomology_of(&self, r: &Resolution, n: usize) -> Result<CohomologyPresentation> {
        if n + 1 > r.horizon() {
            return Err(Error::InvalidResolution(format!(
                "H^{n} needs horizon {}, have {}",
                n + 1,
                r.horizon()
            )));
        }
        let fc = self.functor.apply_complex(&r.complex().truncate(n + 1))?;
        cohomology(&fc.complex, n)
    }

    /// `R^n F(M) = H^n(F I^•)` for the registry resolution `I`.
    pub fn derived_presentation(
        &self,
        module: &LambdaModule,
        n: usize,
    ) -> Result<CohomologyPresentation> {
        let r = self.chosen_resolution(module, n)?;
        self.cohomology_of(&r, n)
    }

    /// `R^0 F .. R^horizon F` of `M`.
    pub fn derived_functor(
        &self,
        module: &LambdaModule,
        horizon: usize,
    ) -> Result<Vec<DerivedFunctorValue>> {
        let r = self.chosen_resolution(module, horizon)?;
        let fc = self.functor.apply_complex(r.complex())?;
        (0..=horizon)
            .map(|degree| {
                Ok(DerivedFunctorValue {
                    functor: self.functor.clone(),
                    module: module.clone(),
                    degree,
                    presentation: cohomology(&fc.complex, degree)?,
                })
            })
            .collect()
    }

    /// Whether `R^i F(W) = 0` for `1 <= i <= horizon`.
    pub fn is_acyclic(&self, module: &LambdaModule, horizon: usize) -> Result<bool> {
        let r = self.chosen_resolution(module, horizon)?;
        let fc = self.functor.apply_complex(r.complex())?;
        for i in 1..=horizon {
            if cohomology(&fc.complex, i)?.dim() != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `R^n F(phi)` in the registry bases.
    pub fn derived_map(&self, phi: &ModuleMap, n: usize) -> Result<Matrix> {
        let ra = self.chosen_resolution(phi.src(), n)?;
        let rb = self.chosen_resolution(phi.dst(), n)?;
        let lift = lift_resolution_map(phi, &ra, &rb, &mut Choice::Canonical)?;
        induced_on_cohomology(&self.functor.apply_chain_map(&lift)?, n)
    }

    fn check_acyclic_objects(&self, j: &Resolution, n: usize) -> Result<()> {
        for p in 0..=(n + 1).min(j.horizon()) {
            if !self.is_acyclic(j.object(p), n + 1)? {
                return Err(Error::AcyclicityFailure(format!(
                    "degree {p} object has nonzero higher derived functors"
                )));
            }
        }
        Ok(())
    }

    /// `c^n: H^n(F J^•) -> R^n F(M)`, induced by a comparison lift over the
    /// identity of `M = J.base()`.
    pub fn canonical_iso(&self, j: &Resolution, n: usize) -> Result<Matrix> {
        self.canonical_iso_with(j, n, &mut Choice::Canonical)
    }

    pub fn canonical_iso_with(
        &self,
        j: &Resolution,
        n: usize,
        choice: &mut Choice,
    ) -> Result<Matrix> {
        if n + 1 > j.horizon() {
            return Err(Error::InvalidResolution(format!(
                "c^{n} needs horizon {}, have {}",
                n + 1,
                j.horizon()
            )));
        }
        self.check_acyclic_objects(j, n)?;
        let i = self.chosen_resolution(j.base(), n)?;
        let j = j.truncate(n + 1);
        let id = ModuleMap::identity(j.base());
        let lift = lift_resolution_map(&id, &j, &i, choice)?;
        induced_on_cohomology(&self.functor.apply_chain_map(&lift)?, n)
    }

    /// `F` of the horseshoe sequence built from `RA` and `RB`.
    pub fn horseshoe_image(
        &self,
        ses: &SesModules,
        ra: &Resolution,
        rb: &Resolution,
        choice: &mut Choice,
    ) -> Result<SesOfComplexes> {
        let hs = horseshoe(ses, ra, rb, choice)?;
        self.functor.apply_ses(&hs.ses)
    }

    /// Connecting map `H^p(F RB) -> H^{p+1}(F RA)` through a horseshoe over
    /// `ses`.
    pub fn horseshoe_delta(
        &self,
        ses: &SesModules,
        ra: &Resolution,
        rb: &Resolution,
        p: usize,
        choice: &mut Choice,
    ) -> Result<Matrix> {
        let h = p + 2;
        if ra.horizon() < h || rb.horizon() < h {
            return Err(Error::InvalidResolution(format!(
                "connecting map in degree {p} needs horizon {h}"
            )));
        }
        let fs = self.horseshoe_image(ses, &ra.truncate(h), &rb.truncate(h), choice)?;
        snake_delta_matrix(&fs, p, choice)
    }

    /// `∂^p: R^p F(B) -> R^{p+1} F(A)` for `0 -> A -> C -> B -> 0`.
    pub fn connecting_derived(&self, ses: &SesModules, p: usize) -> Result<Matrix> {
        self.connecting_derived_with(ses, p, &mut Choice::Canonical)
    }

    pub fn connecting_derived_with(
        &self,
        ses: &SesModules,
        p: usize,
        choice: &mut Choice,
    ) -> Result<Matrix> {
        let ra = self.chosen_resolution(ses.sub(), p + 1)?;
        let rb = self.chosen_resolution(ses.quotient(), p)?;
        self.horseshoe_delta(ses, &ra, &rb, p, choice)
    }

    /// `∂⁰: FB -> R^1 F(A)` and the map it induces on `FB / im FC`.
    pub fn connecting_bar0(&self, ses: &SesModules) -> Result<ConnectingZero> {
        self.connecting_bar0_with(ses, &mut Choice::Canonical)
    }

    pub fn connecting_bar0_with(
        &self,
        ses: &SesModules,
        choice: &mut Choice,
    ) -> Result<ConnectingZero> {
        let ra = self.chosen_resolution(ses.sub(), 1)?;
        let rb = self.chosen_resolution(ses.quotient(), 1)?;
        let fs = self.horseshoe_image(ses, &ra.truncate(2), &rb.truncate(2), choice)?;
        let f = &self.functor;
        let fb = f.apply_object(ses.quotient())?;
        let fc = f.apply_object(ses.middle())?;
        let frb0 = f.apply_object(rb.object(0))?;
        // FB sits in F(RB^0) as H^0 through F(ε_B).
        let cocycles = f.apply_map_between(&fb, &frb0, rb.augmentation())?;
        let images = snake_delta_class(&fs, 0, &cocycles, choice)?;
        let target = cohomology(fs.sub(), 1)?;
        let full = target.reduce(&images)?;
        if full.rank() < target.dim() {
            return Err(Error::NotEpic(format!(
                "rank {} onto a space of dimension {}",
                full.rank(),
                target.dim()
            )));
        }
        let from_middle = f.apply_map_between(&fc, &fb, ses.c_to_b())?;
        let domain = quotient(fb.dim(), &image_basis(&from_middle))?;
        let bar = &full * domain.representatives();
        Ok(ConnectingZero { full, domain, bar })
    }

    /// `ι_n: H^n(F J^•) -> FZ^n / im FJ^{n-1}`, sending a cocycle `w` to the
    /// class of the `z` with `F(u_n) z = w`.
    pub fn cycle_identification(
        &self,
        j: &Resolution,
        splitting: &ResolutionSplitting,
        n: usize,
    ) -> Result<Matrix> {
        let f = &self.functor;
        let hn = self.cohomology_of(j, n)?;
        let fz = f.apply_object(&splitting.cycles[n])?;
        let fj = f.apply_object(j.object(n))?;
        let fj_prev = f.apply_object(j.object(n - 1))?;
        let fu = f.apply_map_between(&fz, &fj, &splitting.inclusions[n])?;
        let fv = f.apply_map_between(&fj_prev, &fz, &splitting.projections[n - 1])?;
        let z = crate::linalg::solve(&fu, hn.representatives())?.ok_or_else(|| {
            Error::ChaseFailure(format!(
                "degree {n} cocycle does not come from the cycle module"
            ))
        })?;
        let q = quotient(fz.dim(), &image_basis(&fv))?;
        Ok(q.reduce(&z))
    }

    /// `d^n = ∂^{n-1}_{ℰ_1} ∘ … ∘ ∂^1_{ℰ_{n-1}} ∘ ∂̄⁰_{ℰ_n} ∘ ι_n`.
    pub fn dimension_shift_iso(&self, j: &Resolution, n: usize) -> Result<Matrix> {
        self.dimension_shift_iso_with(j, n, &mut Choice::Canonical)
    }

    pub fn dimension_shift_iso_with(
        &self,
        j: &Resolution,
        n: usize,
        choice: &mut Choice,
    ) -> Result<Matrix> {
        if n == 0 {
            return Err(Error::InvalidResolution(
                "dimension shifting needs n >= 1".into(),
            ));
        }
        if n + 1 > j.horizon() {
            return Err(Error::InvalidResolution(format!(
                "d^{n} needs horizon {}, have {}",
                n + 1,
                j.horizon()
            )));
        }
        self.check_acyclic_objects(j, n)?;
        let splitting = split_resolution(j, n)?;
        let iota = self.cycle_identification(j, &splitting, n)?;
        let mut d = &self
            .connecting_bar0_with(splitting.sequence(n), choice)?
            .bar
            * &iota;
        for p in 1..n {
            let step = self.connecting_derived_with(splitting.sequence(n - p), p, choice)?;
            d = &step * &d;
        }
        Ok(d)
    }

    /// Computes `c^n` and `d^n` and compares `d^n` with `sign_factor(n) c^n`.
    /// Failures are reported in the verdict.
    pub fn verify_sign_lemma(&self, j: &Resolution, n: usize) -> SignReport {
        self.verify_sign_lemma_with(j, n, &mut Choice::Canonical)
    }

    pub fn verify_sign_lemma_with(
        &self,
        j: &Resolution,
        n: usize,
        choice: &mut Choice,
    ) -> SignReport {
        let sign = sign_factor(n);
        let computed = self
            .canonical_iso_with(j, n, choice)
            .and_then(|c| Ok((c, self.dimension_shift_iso_with(j, n, choice)?)));
        let (c, d) = match computed {
            Ok(cd) => cd,
            Err(e) => return SignReport::failed(n, sign, e.to_string()),
        };
        let expected = c.scale(&Rational::from_int(sign as i64));
        let witness = first_difference(&expected, &d);
        let verdict = match (&witness, c.rows()) {
            (Some(_), _) => Verdict::Fail,
            (None, 0) => Verdict::Vacuous,
            (None, _) => Verdict::Pass,
        };
        SignReport {
            n,
            sign,
            dim: c.rows(),
            c_invertible: c.is_invertible(),
            d_invertible: d.is_invertible(),
            c,
            d,
            verdict,
            witness,
            error: None,
        }
    }

    /// Both sides of the square `c_A^{i+1} ∘ δ^i = ∂^i ∘ c_B^i` for the
    /// horseshoe over `ses` built from `RA` and `RB`, plus the comparison of
    /// `δ^i` between two differently chosen horseshoes.
    pub fn verify_lemma_a(
        &self,
        ses: &SesModules,
        ra: &Resolution,
        rb: &Resolution,
        i: usize,
        alternative: &mut Choice,
    ) -> Result<LemmaAReport> {
        let canonical = horseshoe(
            ses,
            &ra.truncate(i + 2),
            &rb.truncate(i + 2),
            &mut Choice::Canonical,
        )?;
        let other = horseshoe(ses, &ra.truncate(i + 2), &rb.truncate(i + 2), alternative)?;
        let delta = snake_delta_matrix(
            &self.functor.apply_ses(&canonical.ses)?,
            i,
            &mut Choice::Canonical,
        )?;
        let delta_other = snake_delta_matrix(&self.functor.apply_ses(&other.ses)?, i, alternative)?;
        let lhs = &self.canonical_iso(ra, i + 1)? * &delta;
        let rhs = &self.connecting_derived(ses, i)? * &self.canonical_iso(rb, i)?;
        Ok(LemmaAReport {
            degree: i,
            dims: [delta.cols(), delta.rows()],
            commutes: lhs == rhs,
            choice_independent: delta == delta_other,
            middles_differ: canonical.resolution != other.resolution,
        })
    }

    /// The signed-cylinder checks in step `p` of the dimension shift for
    /// `H^n(F J^•)`, using `L_i^•` with `i = n - p - 1`.
    pub fn verify_lemma_b(&self, j: &Resolution, n: usize, p: usize) -> Result<LemmaBReport> {
        if p >= n {
            return Err(Error::InvalidResolution(format!("step {p} outside 0..{n}")));
        }
        let i = n - p - 1;
        let h = p + 2;
        let splitting = split_resolution(j, n)?;
        let cyl = lemma_b_resolution(j, &splitting, i, h)?;
        let l = &cyl.resolution;
        let squares_to_zero = (0..h.saturating_sub(1))
            .all(|q| (l.differential(q + 1).matrix() * l.differential(q).matrix()).is_zero());
        let exact = l.is_exact();
        let fs = self.functor.apply_ses(&cyl.ses)?;
        let expected = if p.is_multiple_of(2) { -1 } else { 1 };
        let dim = self.cohomology_of(j, n)?.dim();

        let (on_cohomology, square_commutes) = if p == 0 {
            let zero = self.cylinder_bar0(&cyl.ses, &fs, &splitting, n)?;
            let iota = self.cycle_identification(j, &splitting, n)?;
            let bar = self.connecting_bar0(splitting.sequence(n))?;
            let lower = &self.canonical_iso(&cyl.sub, 1)? * &zero;
            (&zero * &iota, lower == bar.bar)
        } else {
            let delta = snake_delta_matrix(&fs, p, &mut Choice::Canonical)?;
            let lhs = &self.canonical_iso(&cyl.sub, p + 1)? * &delta;
            let rhs = &self.connecting_derived(splitting.sequence(i + 1), p)?
                * &self.canonical_iso(&cyl.quot, p)?;
            (delta, lhs == rhs)
        };
        let observed_sign = if dim == 0 {
            None
        } else if on_cohomology == signed_identity(1, dim) {
            Some(1)
        } else if on_cohomology == signed_identity(-1, dim) {
            Some(-1)
        } else {
            Some(0)
        };
        Ok(LemmaBReport {
            n,
            p,
            dim,
            squares_to_zero,
            exact,
            expected_sign: expected,
            observed_sign,
            square_commutes,
        })
    }

    /// `δ̄: FZ^n / im FJ^{n-1} -> H^1(F K_{n-1}^•)` through the signed
    /// cylinder, where `FZ^n` enters as `H^0(F K_n^•)` via `F(u_n)`.
    fn cylinder_bar0(
        &self,
        ses: &ModuleSesOfComplexes,
        fs: &SesOfComplexes,
        splitting: &ResolutionSplitting,
        n: usize,
    ) -> Result<Matrix> {
        let f = &self.functor;
        let fz = f.apply_object(&splitting.cycles[n])?;
        let fj = f.apply_object(ses.quot().object(0))?;
        let fj_prev = f.apply_object(splitting.sequence(n).middle())?;
        let fu = f.apply_map_between(&fz, &fj, &splitting.inclusions[n])?;
        let fv = f.apply_map_between(&fj_prev, &fz, splitting.sequence(n).c_to_b())?;
        let domain = quotient(fz.dim(), &image_basis(&fv))?;
        let cocycles = &fu * domain.representatives();
        let images = snake_delta_class(fs, 0, &cocycles, &mut Choice::Canonical)?;
        cohomology(fs.sub(), 1)?.reduce(&images)
    }
}

fn first_difference(expected: &Matrix, actual: &Matrix) -> Option<Witness> {
    if expected.shape() != actual.shape() {
        return Some(Witness {
            row: expected.rows().min(actual.rows()),
            col: expected.cols().min(actual.cols()),
            expected: format!("shape {:?}", expected.shape()),
            actual: format!("shape {:?}", actual.shape()),
        });
    }
    for r in 0..expected.rows() {
        for c in 0..expected.cols() {
            if expected[(r, c)] != actual[(r, c)] {
                return Some(Witness {
                    row: r,
                    col: c,
                    expected: expected[(r, c)].to_string(),
                    actual: actual[(r, c)].to_string(),
                });
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// Both sides are zero-dimensional.
    Vacuous,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self != Verdict::Fail
    }
}

/// First entry where `d^n` and `sign · c^n` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub n: usize,
    pub sign: i8,
    pub dim: usize,
    pub c: Matrix,
    pub d: Matrix,
    pub c_invertible: bool,
    pub d_invertible: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl SignReport {
    fn failed(n: usize, sign: i8, error: String) -> Self {
        SignReport {
            n,
            sign,
            dim: 0,
            c: Matrix::zeros(0, 0),
            d: Matrix::zeros(0, 0),
            c_invertible: false,
            d_invertible: false,
            verdict: Verdict::Fail,
            witness: None,
            error: Some(error),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn markdown_header() -> &'static str {
        "| n | sign | dim | c | d | verdict |\n|---|---|---|---|---|---|\n"
    }

    pub fn markdown_row(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "| {} | {:+} | {} | {} | {} | {:?} |",
            self.n,
            self.sign,
            self.dim,
            compact(&self.c),
            compact(&self.d),
            self.verdict
        );
        s
    }

    pub fn to_markdown(reports: &[SignReport]) -> String {
        let mut s = Self::markdown_header().to_string();
        for r in reports {
            s.push_str(&r.markdown_row());
        }
        s
    }
}

/// `[[a, b], [c, d]]` style, for short matrices in tables.
pub fn compact(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .into_iter()
        .map(|r| {
            let entries: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaAReport {
    pub degree: usize,
    /// `[dim H^i(F RB), dim H^{i+1}(F RA)]`.
    pub dims: [usize; 2],
    pub commutes: bool,
    pub choice_independent: bool,
    /// Whether the two horseshoe middles were actually different.
    pub middles_differ: bool,
}

impl LemmaAReport {
    pub fn passed(&self) -> bool {
        self.commutes && self.choice_independent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBReport {
    pub n: usize,
    pub p: usize,
    pub dim: usize,
    pub squares_to_zero: bool,
    pub exact: bool,
    pub expected_sign: i8,
    /// `None` when `H^n` vanishes; `Some(0)` if the map is not `±1`.
    pub observed_sign: Option<i8>,
    pub square_commutes: bool,
}

impl LemmaBReport {
    pub fn passed(&self) -> bool {
        self.squares_to_zero
            && self.exact
            && self.square_commutes
            && self.observed_sign.is_none_or(|s| s == self.expected_sign)
    }
}

/// Product of the observed step signs, or of the expected ones when the
/// cohomology vanishes.
pub fn product_of_signs(steps: &[LemmaBReport]) -> i8 {
    steps
        .iter()
        .map(|s| s.observed_sign.unwrap_or(s.expected_sign))
        .product()
}
