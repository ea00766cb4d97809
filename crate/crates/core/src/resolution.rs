//! Resolutions: the deterministic injective resolutions behind the registry,
//! splitting a resolution into short exact sequences of cycles, shifts,
//! the horseshoe construction, comparison lifts, and the explicit signed
//! two-row resolution `L_i^p = J^{i+p} ⊕ J^{i+p+1}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::category::{
    cokernel_module, direct_sum, direct_sum_all, embed_into_injective, extend_to_injective,
    factor_through_mono, image_module, is_injective, LambdaModule, ModuleMap, SesModules,
};
use crate::choice::Choice;
use crate::complex::{Homotopy, ModuleChainMap, ModuleComplex, ModuleSesOfComplexes};
use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, Matrix};
use crate::rational::Rational;

/// An augmented complex `0 -> M -> C^0 -> C^1 -> ...`, exact at `M` and in
/// every degree below the horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    base: LambdaModule,
    augmentation: ModuleMap,
    complex: ModuleComplex,
}

impl Resolution {
    /// Validates the ends of the augmentation and exactness.
    pub fn new(
        base: LambdaModule,
        augmentation: ModuleMap,
        complex: ModuleComplex,
    ) -> Result<Self> {
        if augmentation.src() != &base || augmentation.dst() != complex.object(0) {
            return Err(Error::InvalidResolution(
                "augmentation does not connect base and degree 0".into(),
            ));
        }
        let r = Resolution {
            base,
            augmentation,
            complex,
        };
        if let Some(bad) = r.first_inexact_degree() {
            return Err(Error::InvalidResolution(match bad {
                None => "augmentation is not injective".to_string(),
                Some(p) => format!("not exact in degree {p}"),
            }));
        }
        Ok(r)
    }

    fn new_unchecked(base: LambdaModule, augmentation: ModuleMap, complex: ModuleComplex) -> Self {
        let r = Resolution {
            base,
            augmentation,
            complex,
        };
        debug_assert!(r.is_exact());
        r
    }

    pub fn base(&self) -> &LambdaModule {
        &self.base
    }

    pub fn augmentation(&self) -> &ModuleMap {
        &self.augmentation
    }

    pub fn complex(&self) -> &ModuleComplex {
        &self.complex
    }

    pub fn horizon(&self) -> usize {
        self.complex.horizon()
    }

    pub fn object(&self, p: usize) -> &LambdaModule {
        self.complex.object(p)
    }

    pub fn differential(&self, p: usize) -> &ModuleMap {
        self.complex.differential(p)
    }

    /// `Some(None)` if the augmentation is not mono, `Some(Some(p))` for the
    /// first degree `p < horizon` where exactness fails.
    fn first_inexact_degree(&self) -> Option<Option<usize>> {
        if !self.augmentation.is_mono() {
            return Some(None);
        }
        let mut incoming = image_basis(self.augmentation.matrix());
        for p in 0..self.horizon() {
            let d = self.differential(p).matrix();
            if kernel_basis(d) != incoming {
                return Some(Some(p));
            }
            incoming = image_basis(d);
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.first_inexact_degree().is_none()
    }

    pub fn is_degreewise_injective(&self) -> bool {
        self.complex.objects().iter().all(is_injective)
    }

    pub fn truncate(&self, horizon: usize) -> Resolution {
        Resolution {
            base: self.base.clone(),
            augmentation: self.augmentation.clone(),
            complex: self.complex.truncate(horizon),
        }
    }
}

/// Embed, take the cokernel, repeat. Deterministic, and a longer horizon
/// extends a shorter one.
pub fn injective_resolution(module: &LambdaModule, horizon: usize) -> Result<Resolution> {
    let (e0, aug) = embed_into_injective(module)?;
    let mut objects = vec![e0];
    let mut differentials = Vec::with_capacity(horizon);
    let (_, mut to_cokernel) = cokernel_module(&aug);
    for _ in 0..horizon {
        let (next, mono) = embed_into_injective(to_cokernel.dst())?;
        differentials.push(to_cokernel.then(&mono)?);
        objects.push(next);
        to_cokernel = cokernel_module(&mono).1;
    }
    let complex = ModuleComplex::new(objects, differentials)?;
    Ok(Resolution::new_unchecked(module.clone(), aug, complex))
}

/// The chosen injective resolution of every module, keyed by the exact
/// entries of its action. Requests with a larger horizon replace the stored
/// resolution by a longer one with the same prefix.
#[derive(Debug, Default)]
pub struct ResolutionRegistry {
    entries: Mutex<HashMap<LambdaModule, Arc<Resolution>>>,
}

impl ResolutionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// A resolution of `module` with horizon at least `horizon`.
    pub fn resolution(&self, module: &LambdaModule, horizon: usize) -> Result<Arc<Resolution>> {
        if let Some(r) = self.lookup(module, horizon) {
            return Ok(r);
        }
        let built = Arc::new(injective_resolution(module, horizon)?);
        let mut map = self.entries.lock().expect("registry lock poisoned");
        let slot = map.entry(module.clone()).or_insert_with(|| built.clone());
        if slot.horizon() < built.horizon() {
            *slot = built;
        }
        Ok(slot.clone())
    }

    fn lookup(&self, module: &LambdaModule, horizon: usize) -> Option<Arc<Resolution>> {
        let map = self.entries.lock().expect("registry lock poisoned");
        map.get(module).filter(|r| r.horizon() >= horizon).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("registry lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `0 -> Z^{q-1} --u--> J^{q-1} --v--> Z^q -> 0` for `q = 1..=depth`,
/// with `Z^0 = M` and `δ^q = u_{q+1} v_q`.
#[derive(Clone, Debug)]
pub struct ResolutionSplitting {
    pub cycles: Vec<LambdaModule>,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    pub sequences: Vec<SesModules>,
}

impl ResolutionSplitting {
    pub fn depth(&self) -> usize {
        self.sequences.len()
    }

    /// `ℰ_q` for `q` in `1..=depth`.
    pub fn sequence(&self, q: usize) -> &SesModules {
        &self.sequences[q - 1]
    }

    /// Checks `δ^q = u_{q+1} ∘ v_q`.
    pub fn reconstructs(&self, j: &Resolution) -> bool {
        (0..self.depth()).all(|q| {
            self.projections[q]
                .then(&self.inclusions[q + 1])
                .map(|c| c == *j.differential(q))
                .unwrap_or(false)
        })
    }
}

/// `Z^q` is realized as the image of `δ^{q-1}` inside `J^q`.
pub fn split_resolution(j: &Resolution, depth: usize) -> Result<ResolutionSplitting> {
    if depth > j.horizon() {
        return Err(Error::InvalidResolution(format!(
            "splitting to depth {depth} needs horizon {depth}, have {}",
            j.horizon()
        )));
    }
    let mut cycles = vec![j.base.clone()];
    let mut inclusions = vec![j.augmentation.clone()];
    let mut projections = Vec::with_capacity(depth);
    let mut sequences = Vec::with_capacity(depth);
    for q in 1..=depth {
        let d = j.differential(q - 1);
        let (z, u) = image_module(d);
        let v = factor_through_mono(&u, d)?;
        sequences.push(SesModules::new(inclusions[q - 1].clone(), v.clone())?);
        cycles.push(z);
        inclusions.push(u);
        projections.push(v);
    }
    Ok(ResolutionSplitting {
        cycles,
        inclusions,
        projections,
        sequences,
    })
}

/// The resolution `Z^i -> J^i -> J^{i+1} -> ...` of the `i`-th cycle module.
pub fn truncated_shift(
    j: &Resolution,
    splitting: &ResolutionSplitting,
    i: usize,
) -> Result<Resolution> {
    if i > splitting.depth() {
        return Err(Error::InvalidResolution(format!(
            "shift by {i} beyond splitting depth {}",
            splitting.depth()
        )));
    }
    Resolution::new(
        splitting.cycles[i].clone(),
        splitting.inclusions[i].clone(),
        j.complex.shift(i)?,
    )
}

fn block_map(src: &LambdaModule, dst: &LambdaModule, blocks: [[&Matrix; 2]; 2]) -> ModuleMap {
    let top = blocks[0][0].hstack(blocks[0][1]);
    let bottom = blocks[1][0].hstack(blocks[1][1]);
    ModuleMap::new_unchecked(src.clone(), dst.clone(), top.vstack(&bottom))
}

/// Degreewise biproduct `L^p = A^p ⊕ B^p` with the structural chain maps.
fn biproduct_ses(
    sub: &ModuleComplex,
    mid: &ModuleComplex,
    quot: &ModuleComplex,
) -> Result<ModuleSesOfComplexes> {
    let h = mid.horizon();
    let mut inc = Vec::with_capacity(h + 1);
    let mut proj = Vec::with_capacity(h + 1);
    for p in 0..=h {
        let (a, l, b) = (sub.object(p), mid.object(p), quot.object(p));
        let n = l.dim();
        let id = Matrix::identity(n);
        inc.push(ModuleMap::new_unchecked(
            a.clone(),
            l.clone(),
            id.block(0, 0, n, a.dim()),
        ));
        proj.push(ModuleMap::new_unchecked(
            l.clone(),
            b.clone(),
            id.block(a.dim(), 0, b.dim(), n),
        ));
    }
    ModuleSesOfComplexes::new(
        ModuleChainMap::new(sub.truncate(h), mid.clone(), inc)?,
        ModuleChainMap::new(mid.clone(), quot.truncate(h), proj)?,
    )
}

/// Output of the horseshoe construction.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub resolution: Resolution,
    pub ses: ModuleSesOfComplexes,
}

/// Resolution of the middle of `0 -> A -> C -> B -> 0` with degreewise
/// objects `RA^p ⊕ RB^p` and differential `[[d_A, σ^p], [0, d_B]]`; the
/// off-diagonal maps `σ^p` are extensions against the injectives of `RA`,
/// picked according to `choice`.
pub fn horseshoe(
    ses: &SesModules,
    ra: &Resolution,
    rb: &Resolution,
    choice: &mut Choice,
) -> Result<Horseshoe> {
    if ra.base() != ses.sub() || rb.base() != ses.quotient() {
        return Err(Error::InvalidResolution(
            "horseshoe: resolutions do not match the sequence ends".into(),
        ));
    }
    let h = ra.horizon().min(rb.horizon());
    let (ra_c, rb_c) = (ra.complex.truncate(h), rb.complex.truncate(h));
    let m = ses.middle().order();
    let objects: Vec<LambdaModule> = (0..=h)
        .map(|p| direct_sum_all(m, &[ra_c.object(p), rb_c.object(p)]))
        .collect();

    let lift_failed =
        |what: String| move |e: Error| Error::ConstructionFailure(format!("horseshoe {what}: {e}"));
    let to_a0 = extend_to_injective(ses.a_to_c(), ra.augmentation(), choice)
        .map_err(lift_failed("augmentation".into()))?;
    let to_b0 = ses.c_to_b().then(rb.augmentation())?;
    let augmentation = ModuleMap::new_unchecked(
        ses.middle().clone(),
        objects[0].clone(),
        to_a0.matrix().vstack(to_b0.matrix()),
    );

    let mut differentials = Vec::with_capacity(h);
    let mut previous: Option<ModuleMap> = None;
    for p in 0..h {
        let (da, db) = (ra_c.differential(p), rb_c.differential(p));
        let sigma = match &previous {
            None => {
                // σ^0 ∘ (ε_B π) = -d_A^0 ∘ g
                let target = to_a0.then(da)?.scale(&-Rational::one());
                extend_to_injective(&to_b0, &target, choice)
            }
            Some(prev) => {
                // σ^p ∘ d_B^{p-1} = -d_A^p ∘ σ^{p-1}
                let target = prev.then(da)?.scale(&-Rational::one());
                extend_to_injective(rb_c.differential(p - 1), &target, choice)
            }
        }
        .map_err(lift_failed(format!("degree {p}")))?;
        let zero = Matrix::zeros(db.dst().dim(), da.src().dim());
        differentials.push(block_map(
            &objects[p],
            &objects[p + 1],
            [[da.matrix(), sigma.matrix()], [&zero, db.matrix()]],
        ));
        previous = Some(sigma);
    }
    let complex = ModuleComplex::new(objects, differentials)?;
    let ses_c = biproduct_ses(&ra_c, &complex, &rb_c)?;
    let resolution = Resolution::new(ses.middle().clone(), augmentation, complex)
        .map_err(|e| Error::ConstructionFailure(format!("horseshoe middle: {e}")))?;
    Ok(Horseshoe {
        resolution,
        ses: ses_c,
    })
}

/// Comparison map over `phi: A -> B` from any resolution of `A` into a
/// degreewise injective resolution of `B`.
pub fn lift_resolution_map(
    phi: &ModuleMap,
    ra: &Resolution,
    rb: &Resolution,
    choice: &mut Choice,
) -> Result<ModuleChainMap> {
    if phi.src() != ra.base() || phi.dst() != rb.base() {
        return Err(Error::InvalidResolution(
            "lift: map does not match the resolved modules".into(),
        ));
    }
    let h = ra.horizon().min(rb.horizon());
    let failed = |p: usize| {
        move |e: Error| Error::ConstructionFailure(format!("comparison lift in degree {p}: {e}"))
    };
    let mut components = Vec::with_capacity(h + 1);
    let start = phi.then(rb.augmentation())?;
    components.push(extend_to_injective(ra.augmentation(), &start, choice).map_err(failed(0))?);
    for p in 1..=h {
        let target = components[p - 1].then(rb.differential(p - 1))?;
        let f = extend_to_injective(ra.differential(p - 1), &target, choice).map_err(failed(p))?;
        components.push(f);
    }
    ModuleChainMap::new(ra.complex.truncate(h), rb.complex.truncate(h), components)
}

/// Homotopy between two comparison maps over the same `phi`, built degree
/// by degree against the injectives of the target.
pub fn comparison_homotopy(
    f: &ModuleChainMap,
    g: &ModuleChainMap,
    choice: &mut Choice,
) -> Result<Homotopy> {
    if f.src() != g.src() || f.dst() != g.dst() {
        return Err(Error::InvalidComplex(
            "homotopy between maps with different ends".into(),
        ));
    }
    let (src, dst) = (f.src(), f.dst());
    let h = f.horizon().min(g.horizon());
    let mut components = vec![Matrix::zeros(0, src.object(0).dim())];
    let mut prev: Option<ModuleMap> = None;
    for p in 0..h {
        // h^{p+1} ∘ d_src^p = f^p - g^p - d_dst^{p-1} ∘ h^p
        let mut target = f.component(p).matrix() - g.component(p).matrix();
        if let Some(hp) = &prev {
            target = &target - &(dst.differential(p - 1).matrix() * hp.matrix());
        }
        let target = ModuleMap::new(src.object(p).clone(), dst.object(p).clone(), target)?;
        let next = extend_to_injective(src.differential(p), &target, choice).map_err(|e| {
            Error::ConstructionFailure(format!("homotopy in degree {}: {e}", p + 1))
        })?;
        components.push(next.matrix().clone());
        prev = Some(next);
    }
    Ok(Homotopy { components })
}

/// A contractible summand `E --id--> E` placed in degrees `degree` and
/// `degree + 1`, with `E = Λ^rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pad {
    pub degree: usize,
    pub rank: usize,
}

/// Adds contractible injective summands to a resolution. The result
/// resolves the same module and stays degreewise injective if the input is.
pub fn pad_resolution(r: &Resolution, pads: &[Pad]) -> Result<Resolution> {
    let h = r.horizon();
    let m = r.base.order();
    if let Some(p) = pads.iter().find(|p| p.degree + 1 > h) {
        return Err(Error::InvalidResolution(format!(
            "pad at degree {} needs horizon {}, have {h}",
            p.degree,
            p.degree + 1
        )));
    }
    // Summands present at degree p: the original, then pads in list order.
    let present = |p: usize| -> Vec<usize> {
        (0..pads.len())
            .filter(|&k| pads[k].degree == p || pads[k].degree + 1 == p)
            .collect()
    };
    let mut objects = Vec::with_capacity(h + 1);
    for p in 0..=h {
        let extra: Vec<LambdaModule> = present(p)
            .into_iter()
            .map(|k| LambdaModule::free(m, pads[k].rank))
            .collect();
        let mut parts = vec![r.object(p)];
        parts.extend(extra.iter());
        objects.push(direct_sum_all(m, &parts));
    }
    let offsets = |p: usize| -> HashMap<usize, usize> {
        let mut at = r.object(p).dim();
        let mut out = HashMap::new();
        for k in present(p) {
            out.insert(k, at);
            at += pads[k].rank * m;
        }
        out
    };
    let mut differentials = Vec::with_capacity(h);
    for p in 0..h {
        let mut d = Matrix::zeros(objects[p + 1].dim(), objects[p].dim());
        d.set_block(0, 0, r.differential(p).matrix());
        let (from, to) = (offsets(p), offsets(p + 1));
        for (k, pad) in pads.iter().enumerate() {
            if pad.degree == p {
                let size = pad.rank * m;
                d.set_block(to[&k], from[&k], &Matrix::identity(size));
            }
        }
        differentials.push(ModuleMap::new(
            objects[p].clone(),
            objects[p + 1].clone(),
            d,
        )?);
    }
    let aug = Matrix::zeros(objects[0].dim(), r.base.dim());
    let mut aug = aug;
    aug.set_block(0, 0, r.augmentation.matrix());
    let augmentation = ModuleMap::new(r.base.clone(), objects[0].clone(), aug)?;
    Resolution::new(
        r.base.clone(),
        augmentation,
        ModuleComplex::new(objects, differentials)?,
    )
}

/// Changes the basis of every object by the given automorphisms `g^p`:
/// `ε' = g^0 ε`, `δ'^p = g^{p+1} δ^p (g^p)^{-1}`.
pub fn transport_resolution(r: &Resolution, automorphisms: &[ModuleMap]) -> Result<Resolution> {
    let h = r.horizon();
    if automorphisms.len() != h + 1 {
        return Err(Error::DimensionMismatch(format!(
            "need {} automorphisms, got {}",
            h + 1,
            automorphisms.len()
        )));
    }
    let mut inverses = Vec::with_capacity(h + 1);
    for (p, g) in automorphisms.iter().enumerate() {
        if g.src() != r.object(p) || g.dst() != r.object(p) {
            return Err(Error::DimensionMismatch(format!(
                "automorphism {p} is not an endomorphism of degree {p}"
            )));
        }
        let inv = g.matrix().inverse().ok_or_else(|| {
            Error::ConstructionFailure(format!("map in degree {p} is not invertible"))
        })?;
        inverses.push(inv);
    }
    let augmentation = r.augmentation.then(&automorphisms[0])?;
    let differentials = (0..h)
        .map(|p| {
            let d = automorphisms[p + 1].matrix() * &(r.differential(p).matrix() * &inverses[p]);
            ModuleMap::new(r.object(p).clone(), r.object(p + 1).clone(), d)
        })
        .collect::<Result<Vec<_>>>()?;
    Resolution::new(
        r.base.clone(),
        augmentation,
        ModuleComplex::new(r.complex.objects().to_vec(), differentials)?,
    )
}

/// The resolution `0 -> J^i -> L_i^•` with `L_i^p = J^{i+p} ⊕ J^{i+p+1}`,
/// together with the short exact sequence `K_i -> L_i -> K_{i+1}` of
/// resolutions lying over `0 -> Z^i -> J^i -> Z^{i+1} -> 0`.
#[derive(Clone, Debug)]
pub struct SignedCylinder {
    pub resolution: Resolution,
    pub ses: ModuleSesOfComplexes,
    pub sub: Resolution,
    pub quot: Resolution,
}

/// Augmentation is the column `(1, δ^i)`; the differential is
/// `[[δ^{i+p}, (-1)^{p+1}], [0, δ^{i+p+1}]]` acting on column vectors.
pub fn lemma_b_resolution(
    j: &Resolution,
    splitting: &ResolutionSplitting,
    i: usize,
    horizon: usize,
) -> Result<SignedCylinder> {
    if i + horizon + 1 > j.horizon() {
        return Err(Error::InvalidResolution(format!(
            "signed cylinder at {i} with horizon {horizon} needs J up to degree {}, have {}",
            i + horizon + 1,
            j.horizon()
        )));
    }
    if i + 1 > splitting.depth() {
        return Err(Error::InvalidResolution(format!(
            "signed cylinder at {i} needs splitting depth {}",
            i + 1
        )));
    }
    let m = j.base.order();
    let jo = |p: usize| j.object(p);
    let objects: Vec<LambdaModule> = (0..=horizon)
        .map(|p| direct_sum_all(m, &[jo(i + p), jo(i + p + 1)]))
        .collect();
    let differentials = (0..horizon)
        .map(|p| {
            let sign = if p % 2 == 0 {
                -Rational::one()
            } else {
                Rational::one()
            };
            let cross = Matrix::identity(jo(i + p + 1).dim()).scale(&sign);
            let zero = Matrix::zeros(jo(i + p + 2).dim(), jo(i + p).dim());
            block_map(
                &objects[p],
                &objects[p + 1],
                [
                    [j.differential(i + p).matrix(), &cross],
                    [&zero, j.differential(i + p + 1).matrix()],
                ],
            )
        })
        .collect();
    let complex = ModuleComplex::new(objects, differentials)?;
    let aug = Matrix::identity(jo(i).dim()).vstack(j.differential(i).matrix());
    let augmentation = ModuleMap::new(jo(i).clone(), complex.object(0).clone(), aug)?;
    let resolution = Resolution::new(jo(i).clone(), augmentation, complex)?;

    let sub = truncated_shift(j, splitting, i)?.truncate(horizon);
    let quot = truncated_shift(j, splitting, i + 1)?.truncate(horizon);
    let ses = biproduct_ses(sub.complex(), resolution.complex(), quot.complex())?;
    Ok(SignedCylinder {
        resolution,
        ses,
        sub,
        quot,
    })
}

/// Direct sum of two resolutions, degreewise.
pub fn direct_sum_resolution(a: &Resolution, b: &Resolution) -> Result<Resolution> {
    let h = a.horizon().min(b.horizon());
    let base = direct_sum(&a.base, &b.base)?.module;
    let m = base.order();
    let objects: Vec<LambdaModule> = (0..=h)
        .map(|p| direct_sum_all(m, &[a.object(p), b.object(p)]))
        .collect();
    let differentials = (0..h)
        .map(|p| {
            let d = Matrix::block_diag(&[a.differential(p).matrix(), b.differential(p).matrix()]);
            ModuleMap::new(objects[p].clone(), objects[p + 1].clone(), d)
        })
        .collect::<Result<Vec<_>>>()?;
    let aug = Matrix::block_diag(&[a.augmentation.matrix(), b.augmentation.matrix()]);
    let augmentation = ModuleMap::new(base.clone(), objects[0].clone(), aug)?;
    Resolution::new(
        base,
        augmentation,
        ModuleComplex::new(objects, differentials)?,
    )
}

#[derive(Serialize, Deserialize)]
struct ResolutionFile {
    base: LambdaModule,
    augmentation: Matrix,
    #[serde(flatten)]
    complex: ModuleComplex,
}

impl Serialize for Resolution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ResolutionFile {
            base: self.base.clone(),
            augmentation: self.augmentation.matrix().clone(),
            complex: self.complex.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Resolution {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ResolutionFile::deserialize(deserializer)?;
        let target = file.complex.object(0).clone();
        let aug = if file.base.dim() == 0 || target.dim() == 0 {
            Matrix::zeros(target.dim(), file.base.dim())
        } else {
            file.augmentation
        };
        let augmentation =
            ModuleMap::new(file.base.clone(), target, aug).map_err(serde::de::Error::custom)?;
        Resolution::new(file.base, augmentation, file.complex).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{FunctorSpec, TruncatedAlgebra};
    use crate::complex::is_homotopy;

    fn k2() -> LambdaModule {
        LambdaModule::cyclic(2, 1)
    }

    fn lam2() -> LambdaModule {
        LambdaModule::free(2, 1)
    }

    #[test]
    fn standard_resolution_of_simple() {
        let r = injective_resolution(&k2(), 4).unwrap();
        let x = lam2().action().clone();
        for p in 0..=4 {
            assert_eq!(r.object(p), &lam2());
        }
        for p in 0..4 {
            assert_eq!(r.differential(p).matrix(), &x);
        }
        assert_eq!(r.augmentation().matrix(), &Matrix::from_ints(&[&[0], &[1]]));
        assert!(r.is_degreewise_injective());
    }

    #[test]
    fn injective_module_resolves_in_one_step() {
        let r = injective_resolution(&lam2(), 3).unwrap();
        assert_eq!(r.object(0), &lam2());
        assert!(r.augmentation().matrix().is_identity());
        for p in 1..=3 {
            assert_eq!(r.object(p).dim(), 0);
        }
    }

    #[test]
    fn resolution_of_sum_is_sum_of_resolutions() {
        let sum = direct_sum(&lam2(), &k2()).unwrap().module;
        let r = injective_resolution(&sum, 3).unwrap();
        let expected = direct_sum_resolution(
            &injective_resolution(&lam2(), 3).unwrap(),
            &injective_resolution(&k2(), 3).unwrap(),
        )
        .unwrap();
        assert_eq!(r.complex().dims(), expected.complex().dims());
        assert!(r.is_exact());
    }

    #[test]
    fn registry_is_deterministic_and_extends() {
        let reg = ResolutionRegistry::new();
        let a = reg.resolution(&k2(), 2).unwrap();
        let b = reg.resolution(&k2(), 1).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = reg.resolution(&k2(), 5).unwrap();
        assert_eq!(c.horizon(), 5);
        assert_eq!(c.truncate(2), *a);
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn splitting_standard_resolution() {
        let j = injective_resolution(&k2(), 4).unwrap();
        let s = split_resolution(&j, 3).unwrap();
        assert!(s.cycles.iter().all(|z| z.dim() == 1));
        assert!(s.reconstructs(&j));
        let socle = FunctorSpec::socle(2).unwrap();
        for q in 1..=3 {
            assert!(socle.check_left_exactness(s.sequence(q)).unwrap());
        }
        let injective = injective_resolution(&lam2(), 2).unwrap();
        let s = split_resolution(&injective, 1).unwrap();
        assert_eq!(s.cycles[1].dim(), 0);
    }

    #[test]
    fn shift_is_periodic_for_simple() {
        let j = injective_resolution(&k2(), 5).unwrap();
        let s = split_resolution(&j, 3).unwrap();
        let k2_shift = truncated_shift(&j, &s, 2).unwrap();
        assert_eq!(k2_shift.base(), &k2());
        assert_eq!(k2_shift.complex(), &j.complex().shift(2).unwrap());
        assert_eq!(k2_shift.augmentation().matrix(), j.augmentation().matrix());
        assert_eq!(truncated_shift(&j, &s, 0).unwrap(), j);
    }

    #[test]
    fn horseshoe_over_socle_sequence() {
        let j = injective_resolution(&k2(), 3).unwrap();
        let s = split_resolution(&j, 1).unwrap();
        let e = s.sequence(1);
        let ra = injective_resolution(e.sub(), 3).unwrap();
        let rb = injective_resolution(e.quotient(), 3).unwrap();
        let hs = horseshoe(e, &ra, &rb, &mut Choice::Canonical).unwrap();
        assert_eq!(hs.resolution.base(), &lam2());
        assert!(hs.resolution.is_exact());
        assert!(hs.resolution.is_degreewise_injective());
        for p in 0..=3 {
            assert_eq!(hs.resolution.object(p).dim(), 4);
        }
        // Squares over the sequence commute.
        let inc0 = hs.ses.sub_to_mid().component(0);
        let proj0 = hs.ses.mid_to_quot().component(0);
        assert_eq!(
            e.a_to_c().then(hs.resolution.augmentation()).unwrap(),
            ra.augmentation().then(inc0).unwrap()
        );
        assert_eq!(
            hs.resolution.augmentation().then(proj0).unwrap(),
            e.c_to_b().then(rb.augmentation()).unwrap()
        );
        // F of the sequence is degreewise short exact.
        let socle = FunctorSpec::socle(2).unwrap();
        assert!(socle.apply_ses(&hs.ses).is_ok());
    }

    #[test]
    fn horseshoe_of_split_sequence_is_diagonal() {
        let e = SesModules::split(&k2(), &k2()).unwrap();
        let r = injective_resolution(&k2(), 3).unwrap();
        let hs = horseshoe(&e, &r, &r, &mut Choice::Canonical).unwrap();
        let sum = direct_sum_resolution(&r, &r).unwrap();
        assert_eq!(hs.resolution, sum);
    }

    #[test]
    fn lifts_are_homotopic() {
        let j = injective_resolution(&k2(), 4).unwrap();
        let id = ModuleMap::identity(&k2());
        let f = lift_resolution_map(&id, &j, &j, &mut Choice::Canonical).unwrap();
        assert!(f.components().iter().all(|c| c.matrix().is_identity()));
        let g = lift_resolution_map(&id, &j, &j, &mut Choice::seeded(9)).unwrap();
        let h = comparison_homotopy(&f, &g, &mut Choice::seeded(1)).unwrap();
        assert!(is_homotopy(&f.underlying(), &g.underlying(), &h));
    }

    #[test]
    fn padding_changes_exactly_two_degrees() {
        let r = injective_resolution(&k2(), 4).unwrap();
        let padded = pad_resolution(&r, &[Pad { degree: 2, rank: 1 }]).unwrap();
        let (a, b) = (r.complex().dims(), padded.complex().dims());
        for p in 0..=4 {
            assert_eq!(a[p] != b[p], p == 2 || p == 3, "degree {p}");
        }
        assert!(padded.is_exact() && padded.is_degreewise_injective());
        assert_eq!(pad_resolution(&r, &[]).unwrap(), r);
        assert!(pad_resolution(&r, &[Pad { degree: 4, rank: 1 }]).is_err());
    }

    #[test]
    fn signed_cylinder_is_an_exact_resolution() {
        let j = injective_resolution(&k2(), 5).unwrap();
        let s = split_resolution(&j, 2).unwrap();
        let cyl = lemma_b_resolution(&j, &s, 0, 3).unwrap();
        assert!(cyl.resolution.is_exact());
        assert_eq!(cyl.resolution.object(0).dim(), 4);
        // v -> (v, x v)
        let expected = Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0], &[1, 0]]);
        assert_eq!(cyl.resolution.augmentation().matrix(), &expected);
        for p in 0..2 {
            let dd = cyl.resolution.differential(p + 1).matrix()
                * cyl.resolution.differential(p).matrix();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn transport_keeps_exactness() {
        let alg = TruncatedAlgebra::new(2).unwrap();
        let r = injective_resolution(&alg.simple(), 3).unwrap();
        // 1 + x is an automorphism of Λ.
        let lam = alg.regular();
        let g = ModuleMap::new(
            lam.clone(),
            lam.clone(),
            &Matrix::identity(2) + lam.action(),
        )
        .unwrap();
        let two = ModuleMap::identity(&lam).scale(&Rational::from_int(2));
        let t = transport_resolution(&r, &[g, two.clone(), two.clone(), two]).unwrap();
        assert!(t.is_exact());
        // 2x(1+x)^{-1} = 2x
        assert_eq!(
            t.differential(0).matrix(),
            &lam.action().scale(&Rational::from_int(2))
        );
        assert_ne!(t, r);
    }

    #[test]
    fn json_round_trip() {
        let r = injective_resolution(&k2(), 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(
            s.contains("\"base\"") && s.contains("\"augmentation\"") && s.contains("\"horizon\"")
        );
        let back: Resolution = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
