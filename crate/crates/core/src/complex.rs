//! Bounded cochain complexes, cohomology with fixed bases, chain maps,
//! homotopies, and the connecting homomorphism of a short exact sequence of
//! complexes.
//!
//! A complex has objects in degrees `0..=horizon` and differentials
//! `δ^i : C^i -> C^{i+1}` for `i < horizon`. Statements about degree `i` are
//! only meaningful when `δ^i` exists, i.e. `i < horizon`.

use serde::{Deserialize, Serialize};

use crate::category::{FObject, FunctorSpec, LambdaModule, ModuleMap};
use crate::choice::Choice;
use crate::error::{Error, Result};
use crate::linalg::{
    image_basis, induced_map, kernel_basis, solve, solve_with, subquotient, Matrix,
    QuotientPresentation, Subspace,
};

/// A complex of finite-dimensional vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorComplex {
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl VectorComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} objects need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::InvalidComplex(format!(
                    "differential {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..differentials.len() {
            if !(&differentials[i] * &differentials[i - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d^{i} d^{} is not zero",
                    i - 1
                )));
            }
        }
        Ok(VectorComplex {
            dims,
            differentials,
        })
    }

    /// Zero differentials.
    pub fn zero_differentials(dims: Vec<usize>) -> Self {
        let differentials = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        VectorComplex {
            dims,
            differentials,
        }
    }

    pub fn horizon(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `δ^i`, absent at and beyond the horizon.
    pub fn differential(&self, i: usize) -> Option<&Matrix> {
        self.differentials.get(i)
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// `δ^{i-1}`, the zero map out of the zero space when `i = 0`.
    fn incoming(&self, i: usize) -> Matrix {
        if i == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.differentials[i - 1].clone()
        }
    }

    /// `Z^i`: the full space at the horizon, where no differential is known.
    pub fn cycles(&self, i: usize) -> Subspace {
        match self.differential(i) {
            Some(d) => kernel_basis(d),
            None => Subspace::full(self.dim(i)),
        }
    }

    pub fn boundaries(&self, i: usize) -> Subspace {
        image_basis(&self.incoming(i))
    }

    pub fn is_exact_at(&self, i: usize) -> bool {
        self.cycles(i) == self.boundaries(i)
    }
}

/// `H^n` of a complex: `ker δ^n / im δ^{n-1}` with fixed representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub degree: usize,
    pub presentation: QuotientPresentation,
}

impl CohomologyPresentation {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    pub fn representatives(&self) -> &Matrix {
        self.presentation.representatives()
    }

    /// Coordinates of cocycles; the input must consist of cocycles.
    pub fn reduce(&self, cocycles: &Matrix) -> Result<Matrix> {
        if !self.presentation.numerator().contains(cocycles) {
            return Err(Error::WellDefinedness(format!(
                "vector is not a cocycle in degree {}",
                self.degree
            )));
        }
        Ok(self.presentation.reduce(cocycles))
    }
}

pub fn cohomology(c: &VectorComplex, n: usize) -> Result<CohomologyPresentation> {
    if n > c.horizon() {
        return Err(Error::InvalidComplex(format!(
            "degree {n} beyond horizon {}",
            c.horizon()
        )));
    }
    let presentation = subquotient(&c.cycles(n), &c.boundaries(n))?;
    Ok(CohomologyPresentation {
        degree: n,
        presentation,
    })
}

/// A chain map of vector complexes. Components exist in degrees
/// `0..=horizon` of the map, which is at most either complex's horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    src: VectorComplex,
    dst: VectorComplex,
    components: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(src: VectorComplex, dst: VectorComplex, components: Vec<Matrix>) -> Result<Self> {
        let h = components.len();
        if h == 0 || h > src.dims.len() || h > dst.dims.len() {
            return Err(Error::InvalidComplex(format!(
                "chain map with {h} components between horizons {} and {}",
                src.horizon(),
                dst.horizon()
            )));
        }
        for (i, f) in components.iter().enumerate() {
            if f.shape() != (dst.dim(i), src.dim(i)) {
                return Err(Error::InvalidComplex(format!(
                    "component {i} has wrong shape"
                )));
            }
        }
        for i in 0..h - 1 {
            let left = &components[i + 1] * &src.differentials[i];
            let right = &dst.differentials[i] * &components[i];
            if left != right {
                return Err(Error::InvalidComplex(format!(
                    "chain map does not commute with the differentials in degree {i}"
                )));
            }
        }
        Ok(ChainMap {
            src,
            dst,
            components,
        })
    }

    pub fn identity(c: &VectorComplex) -> Self {
        ChainMap {
            src: c.clone(),
            dst: c.clone(),
            components: c.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn src(&self) -> &VectorComplex {
        &self.src
    }

    pub fn dst(&self) -> &VectorComplex {
        &self.dst
    }

    pub fn horizon(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> &Matrix {
        &self.components[i]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }
}

/// Matrix of `H^n(f)` in the fixed cohomology bases.
pub fn induced_on_cohomology(f: &ChainMap, n: usize) -> Result<Matrix> {
    if n > f.horizon() {
        return Err(Error::InvalidComplex(format!(
            "degree {n} beyond chain map horizon {}",
            f.horizon()
        )));
    }
    let src = cohomology(&f.src, n)?;
    let dst = cohomology(&f.dst, n)?;
    induced_map(&src.presentation, &dst.presentation, &f.components[n])
}

/// `h^i : C^i -> D^{i-1}` for `i = 0..=horizon`; `h^0` is the map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub components: Vec<Matrix>,
}

/// `f - g = δ h + h δ` in every degree `i` where `δ_src^i` exists.
pub fn is_homotopy(f: &ChainMap, g: &ChainMap, h: &Homotopy) -> bool {
    let top = f.horizon().min(g.horizon());
    if h.components.len() < top + 1 {
        return false;
    }
    (0..top).all(|i| {
        let diff = &f.components[i] - &g.components[i];
        let mut rhs = &h.components[i + 1] * &f.src.differentials[i];
        if i > 0 {
            rhs = &rhs + &(&f.dst.differentials[i - 1] * &h.components[i]);
        }
        diff == rhs
    })
}

/// Searches for a homotopy `f ≃ g` by one global linear solve over all
/// components. `Ok(None)` means the maps are not homotopic within the
/// horizon.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    if f.src != g.src || f.dst != g.dst {
        return Err(Error::InvalidComplex(
            "homotopy between maps with different ends".into(),
        ));
    }
    let top = f.horizon().min(g.horizon());
    let (src, dst) = (&f.src, &f.dst);
    // Unknown blocks vec(h^i) for i = 1..=top, row-major, h^i is dst(i-1) x src(i).
    let sizes: Vec<usize> = (1..=top).map(|i| dst.dim(i - 1) * src.dim(i)).collect();
    let mut offsets = vec![0usize];
    for s in &sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    let unknowns = *offsets.last().unwrap();
    let eq_sizes: Vec<usize> = (0..top).map(|i| dst.dim(i) * src.dim(i)).collect();
    let equations: usize = eq_sizes.iter().sum();
    let mut system = Matrix::zeros(equations, unknowns);
    let mut rhs = Matrix::zeros(equations, 1);
    let mut row = 0;
    for i in 0..top {
        // vec(h^{i+1} δ_src^i) = (I ⊗ δ_src^{i,T}) vec(h^{i+1})
        let right = Matrix::identity(dst.dim(i)).kron(&src.differentials[i].transpose());
        system.set_block(row, offsets[i], &right);
        if i > 0 {
            // vec(δ_dst^{i-1} h^i) = (δ_dst^{i-1} ⊗ I) vec(h^i)
            let left = dst.differentials[i - 1].kron(&Matrix::identity(src.dim(i)));
            system.set_block(row, offsets[i - 1], &left);
        }
        let diff = (&f.components[i] - &g.components[i]).flatten();
        rhs.set_block(row, 0, &diff);
        row += eq_sizes[i];
    }
    let Some(sol) = solve(&system, &rhs)? else {
        return Ok(None);
    };
    let mut components = vec![Matrix::zeros(0, src.dim(0))];
    for i in 1..=top {
        let block = sol.block(offsets[i - 1], 0, sizes[i - 1], 1);
        components.push(Matrix::unflatten(&block, dst.dim(i - 1), src.dim(i)));
    }
    let h = Homotopy { components };
    debug_assert!(is_homotopy(f, g, &h));
    Ok(Some(h))
}

/// `0 -> A -> B -> C -> 0`, degreewise exact.
#[derive(Clone, Debug)]
pub struct SesOfComplexes {
    sub_to_mid: ChainMap,
    mid_to_quot: ChainMap,
}

impl SesOfComplexes {
    pub fn new(sub_to_mid: ChainMap, mid_to_quot: ChainMap) -> Result<Self> {
        if sub_to_mid.dst != mid_to_quot.src {
            return Err(Error::InvalidComplex("maps do not compose".into()));
        }
        let h = sub_to_mid.horizon().min(mid_to_quot.horizon());
        for i in 0..=h {
            let (f, g) = (&sub_to_mid.components[i], &mid_to_quot.components[i]);
            if f.rank() != f.cols() || g.rank() != g.rows() || image_basis(f) != kernel_basis(g) {
                return Err(Error::InvalidComplex(format!(
                    "sequence is not short exact in degree {i}"
                )));
            }
        }
        Ok(SesOfComplexes {
            sub_to_mid,
            mid_to_quot,
        })
    }

    pub fn sub_to_mid(&self) -> &ChainMap {
        &self.sub_to_mid
    }

    pub fn mid_to_quot(&self) -> &ChainMap {
        &self.mid_to_quot
    }

    pub fn sub(&self) -> &VectorComplex {
        &self.sub_to_mid.src
    }

    pub fn mid(&self) -> &VectorComplex {
        &self.sub_to_mid.dst
    }

    pub fn quot(&self) -> &VectorComplex {
        &self.mid_to_quot.dst
    }

    /// Last degree at which both maps are known.
    pub fn horizon(&self) -> usize {
        self.sub_to_mid.horizon().min(self.mid_to_quot.horizon())
    }
}

/// Lift through the epimorphism, apply the middle differential, pull back
/// through the monomorphism. Applied column by column.
pub fn snake_delta_class(
    ses: &SesOfComplexes,
    i: usize,
    classes: &Matrix,
    choice: &mut Choice,
) -> Result<Matrix> {
    if i + 1 > ses.horizon() {
        return Err(Error::ChaseFailure(format!(
            "degree {} beyond horizon {}",
            i + 1,
            ses.horizon()
        )));
    }
    if let Some(d) = ses.quot().differential(i) {
        if !(d * classes).is_zero() {
            return Err(Error::ChaseFailure(format!(
                "input is not a cocycle in degree {i}"
            )));
        }
    }
    let lift = solve_with(&ses.mid_to_quot.components[i], classes, choice)?
        .ok_or_else(|| Error::ChaseFailure(format!("cannot lift through degree {i} epi")))?;
    let pushed = &ses.mid().differentials[i] * &lift;
    let pulled = solve(&ses.sub_to_mid.components[i + 1], &pushed)?.ok_or_else(|| {
        Error::ChaseFailure(format!("cannot pull back through degree {} mono", i + 1))
    })?;
    if let Some(d) = ses.sub().differential(i + 1) {
        if !(d * &pulled).is_zero() {
            return Err(Error::ChaseFailure(format!(
                "chase result is not a cocycle in degree {}",
                i + 1
            )));
        }
    }
    Ok(pulled)
}

/// Matrix of `H^i(quot) -> H^{i+1}(sub)` in the fixed cohomology bases.
pub fn snake_delta_matrix(ses: &SesOfComplexes, i: usize, choice: &mut Choice) -> Result<Matrix> {
    let source = cohomology(ses.quot(), i)?;
    let target = cohomology(ses.sub(), i + 1)?;
    let images = snake_delta_class(ses, i, source.representatives(), choice)?;
    target.reduce(&images)
}

/// A complex of `Λ`-modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleComplex {
    objects: Vec<LambdaModule>,
    differentials: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(objects: Vec<LambdaModule>, differentials: Vec<ModuleMap>) -> Result<Self> {
        if objects.is_empty() || differentials.len() + 1 != objects.len() {
            return Err(Error::InvalidComplex(
                "objects and differentials do not match up".into(),
            ));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.src() != &objects[i] || d.dst() != &objects[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "differential {i} has the wrong ends"
                )));
            }
        }
        for i in 1..differentials.len() {
            if !(differentials[i].matrix() * differentials[i - 1].matrix()).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d^{i} d^{} is not zero",
                    i - 1
                )));
            }
        }
        Ok(ModuleComplex {
            objects,
            differentials,
        })
    }

    pub fn horizon(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, i: usize) -> &LambdaModule {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[LambdaModule] {
        &self.objects
    }

    pub fn differential(&self, i: usize) -> &ModuleMap {
        &self.differentials[i]
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    pub fn dims(&self) -> Vec<usize> {
        self.objects.iter().map(LambdaModule::dim).collect()
    }

    /// Degrees `0..=horizon` only.
    pub fn truncate(&self, horizon: usize) -> ModuleComplex {
        let h = horizon.min(self.horizon());
        ModuleComplex {
            objects: self.objects[..=h].to_vec(),
            differentials: self.differentials[..h].to_vec(),
        }
    }

    /// The complex `p -> C^{k+p}`.
    pub fn shift(&self, k: usize) -> Result<ModuleComplex> {
        if k > self.horizon() {
            return Err(Error::InvalidComplex(format!(
                "shift by {k} beyond horizon {}",
                self.horizon()
            )));
        }
        Ok(ModuleComplex {
            objects: self.objects[k..].to_vec(),
            differentials: self.differentials[k..].to_vec(),
        })
    }

    /// Underlying vector complex (forgetting the `Λ`-action).
    pub fn underlying(&self) -> VectorComplex {
        VectorComplex {
            dims: self.dims(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.matrix().clone())
                .collect(),
        }
    }
}

/// A chain map of module complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleChainMap {
    src: ModuleComplex,
    dst: ModuleComplex,
    components: Vec<ModuleMap>,
}

impl ModuleChainMap {
    pub fn new(src: ModuleComplex, dst: ModuleComplex, components: Vec<ModuleMap>) -> Result<Self> {
        let h = components.len();
        if h == 0 || h > src.objects.len() || h > dst.objects.len() {
            return Err(Error::InvalidComplex(
                "chain map has the wrong length".into(),
            ));
        }
        for (i, f) in components.iter().enumerate() {
            if f.src() != &src.objects[i] || f.dst() != &dst.objects[i] {
                return Err(Error::InvalidComplex(format!(
                    "component {i} has wrong ends"
                )));
            }
        }
        for i in 0..h - 1 {
            let left = components[i + 1].matrix() * src.differentials[i].matrix();
            let right = dst.differentials[i].matrix() * components[i].matrix();
            if left != right {
                return Err(Error::InvalidComplex(format!(
                    "chain map does not commute with the differentials in degree {i}"
                )));
            }
        }
        Ok(ModuleChainMap {
            src,
            dst,
            components,
        })
    }

    pub fn src(&self) -> &ModuleComplex {
        &self.src
    }

    pub fn dst(&self) -> &ModuleComplex {
        &self.dst
    }

    pub fn horizon(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> &ModuleMap {
        &self.components[i]
    }

    pub fn components(&self) -> &[ModuleMap] {
        &self.components
    }

    pub fn underlying(&self) -> ChainMap {
        ChainMap {
            src: self.src.underlying(),
            dst: self.dst.underlying(),
            components: self.components.iter().map(|c| c.matrix().clone()).collect(),
        }
    }
}

/// Degreewise short exact sequence of module complexes.
#[derive(Clone, Debug)]
pub struct ModuleSesOfComplexes {
    sub_to_mid: ModuleChainMap,
    mid_to_quot: ModuleChainMap,
}

impl ModuleSesOfComplexes {
    pub fn new(sub_to_mid: ModuleChainMap, mid_to_quot: ModuleChainMap) -> Result<Self> {
        // Exactness is a property of the underlying vector spaces.
        SesOfComplexes::new(sub_to_mid.underlying(), mid_to_quot.underlying())?;
        if sub_to_mid.dst != mid_to_quot.src {
            return Err(Error::InvalidComplex("maps do not compose".into()));
        }
        Ok(ModuleSesOfComplexes {
            sub_to_mid,
            mid_to_quot,
        })
    }

    pub fn sub_to_mid(&self) -> &ModuleChainMap {
        &self.sub_to_mid
    }

    pub fn mid_to_quot(&self) -> &ModuleChainMap {
        &self.mid_to_quot
    }

    pub fn sub(&self) -> &ModuleComplex {
        &self.sub_to_mid.src
    }

    pub fn mid(&self) -> &ModuleComplex {
        &self.sub_to_mid.dst
    }

    pub fn quot(&self) -> &ModuleComplex {
        &self.mid_to_quot.dst
    }
}

/// `F` applied degreewise, keeping the `F`-bases so that maps between such
/// complexes can be expressed.
#[derive(Clone, Debug)]
pub struct FComplex {
    pub objects: Vec<FObject>,
    pub complex: VectorComplex,
}

impl FunctorSpec {
    pub fn apply_complex(&self, c: &ModuleComplex) -> Result<FComplex> {
        let objects = c
            .objects
            .iter()
            .map(|o| self.apply_object(o))
            .collect::<Result<Vec<_>>>()?;
        let differentials = c
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| self.apply_map_between(&objects[i], &objects[i + 1], d))
            .collect::<Result<Vec<_>>>()?;
        let dims = objects.iter().map(FObject::dim).collect();
        Ok(FComplex {
            objects,
            complex: VectorComplex::new(dims, differentials)?,
        })
    }

    pub fn apply_chain_map_between(
        &self,
        src: &FComplex,
        dst: &FComplex,
        f: &ModuleChainMap,
    ) -> Result<ChainMap> {
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| self.apply_map_between(&src.objects[i], &dst.objects[i], c))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(src.complex.clone(), dst.complex.clone(), components)
    }

    pub fn apply_chain_map(&self, f: &ModuleChainMap) -> Result<ChainMap> {
        let src = self.apply_complex(&f.src)?;
        let dst = self.apply_complex(&f.dst)?;
        self.apply_chain_map_between(&src, &dst, f)
    }

    /// `F` of a degreewise short exact sequence. Fails if the image is not
    /// degreewise short exact (e.g. the sub complex is not acyclic).
    pub fn apply_ses(&self, ses: &ModuleSesOfComplexes) -> Result<SesOfComplexes> {
        let sub = self.apply_complex(ses.sub())?;
        let mid = self.apply_complex(ses.mid())?;
        let quot = self.apply_complex(ses.quot())?;
        SesOfComplexes::new(
            self.apply_chain_map_between(&sub, &mid, &ses.sub_to_mid)?,
            self.apply_chain_map_between(&mid, &quot, &ses.mid_to_quot)?,
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ComplexObject {
    Module(LambdaModule),
    Dim(usize),
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    horizon: usize,
    objects: Vec<ComplexObject>,
    differentials: Vec<Matrix>,
}

fn fix_shape(m: Matrix, rows: usize, cols: usize) -> Matrix {
    if rows == 0 || cols == 0 {
        Matrix::zeros(rows, cols)
    } else {
        m
    }
}

impl Serialize for VectorComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexFile {
            horizon: self.horizon(),
            objects: self.dims.iter().map(|&d| ComplexObject::Dim(d)).collect(),
            differentials: self.differentials.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VectorComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ComplexFile::deserialize(deserializer)?;
        let dims: Vec<usize> = file
            .objects
            .iter()
            .map(|o| match o {
                ComplexObject::Dim(d) => *d,
                ComplexObject::Module(m) => m.dim(),
            })
            .collect();
        if dims.len() != file.horizon + 1 || file.differentials.len() != file.horizon {
            return Err(serde::de::Error::custom(
                "object count does not match horizon",
            ));
        }
        let diffs = file
            .differentials
            .into_iter()
            .enumerate()
            .map(|(i, d)| fix_shape(d, dims[i + 1], dims[i]))
            .collect();
        VectorComplex::new(dims, diffs).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ModuleComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexFile {
            horizon: self.horizon(),
            objects: self
                .objects
                .iter()
                .cloned()
                .map(ComplexObject::Module)
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.matrix().clone())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModuleComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ComplexFile::deserialize(deserializer)?;
        let objects = file
            .objects
            .into_iter()
            .map(|o| match o {
                ComplexObject::Module(m) => Ok(m),
                ComplexObject::Dim(_) => Err(serde::de::Error::custom(
                    "module complex needs module objects",
                )),
            })
            .collect::<Result<Vec<LambdaModule>, D::Error>>()?;
        if objects.len() != file.horizon + 1 || file.differentials.len() != file.horizon {
            return Err(serde::de::Error::custom(
                "object count does not match horizon",
            ));
        }
        let differentials = file
            .differentials
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let (src, dst) = (&objects[i], &objects[i + 1]);
                ModuleMap::new(src.clone(), dst.clone(), fix_shape(d, dst.dim(), src.dim()))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        ModuleComplex::new(objects, differentials).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn zero_differentials_keep_everything() {
        let c = VectorComplex::zero_differentials(vec![2, 3, 1]);
        for n in 0..=2 {
            assert_eq!(cohomology(&c, n).unwrap().dim(), c.dim(n));
        }
    }

    #[test]
    fn short_exact_complex_is_acyclic() {
        let c = VectorComplex::new(
            vec![1, 2, 1, 0],
            vec![m(&[&[1], &[0]]), m(&[&[0, 1]]), Matrix::zeros(0, 1)],
        )
        .unwrap();
        for n in 0..=2 {
            assert_eq!(cohomology(&c, n).unwrap().dim(), 0, "H^{n}");
        }
    }

    #[test]
    fn rejects_non_complex() {
        let r = VectorComplex::new(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]);
        assert!(matches!(r, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn identity_and_nullhomotopic_maps() {
        // C = (Q --id--> Q): f = id is nullhomotopic via h^1 = id.
        let c = VectorComplex::new(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        let id = ChainMap::identity(&c);
        let zero = ChainMap::new(c.clone(), c.clone(), vec![m(&[&[0]]), m(&[&[0]])]).unwrap();
        let h = find_homotopy(&id, &zero).unwrap().unwrap();
        assert!(is_homotopy(&id, &zero, &h));
        assert_eq!(induced_on_cohomology(&id, 0).unwrap().shape(), (0, 0));

        // D = (Q --0--> Q): identity is not nullhomotopic in degree 0.
        let d = VectorComplex::zero_differentials(vec![1, 1]);
        let id = ChainMap::identity(&d);
        let zero = ChainMap::new(d.clone(), d.clone(), vec![m(&[&[0]]), m(&[&[0]])]).unwrap();
        assert!(find_homotopy(&id, &zero).unwrap().is_none());
        assert!(induced_on_cohomology(&id, 0).unwrap().is_identity());
        assert!(induced_on_cohomology(&zero, 0).unwrap().is_zero());
    }

    fn one_step() -> SesOfComplexes {
        // sub = (0 -> Q), mid = (Q --id--> Q), quot = (Q -> 0).
        let sub = VectorComplex::new(vec![0, 1], vec![Matrix::zeros(1, 0)]).unwrap();
        let mid = VectorComplex::new(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        let quot = VectorComplex::new(vec![1, 0], vec![Matrix::zeros(0, 1)]).unwrap();
        let f = ChainMap::new(sub, mid.clone(), vec![Matrix::zeros(1, 0), m(&[&[1]])]).unwrap();
        let g = ChainMap::new(mid, quot, vec![m(&[&[1]]), Matrix::zeros(0, 1)]).unwrap();
        SesOfComplexes::new(f, g).unwrap()
    }

    #[test]
    fn one_step_connecting_map() {
        let ses = one_step();
        let d = snake_delta_matrix(&ses, 0, &mut Choice::Canonical).unwrap();
        assert_eq!(d, m(&[&[1]]));
        let zero = snake_delta_class(&ses, 0, &m(&[&[0]]), &mut Choice::Canonical).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn chase_rejects_non_cocycle() {
        // quot = (Q --id--> Q) has no nonzero degree-0 cocycles.
        let c = VectorComplex::new(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        let zero = VectorComplex::new(vec![0, 0], vec![Matrix::zeros(0, 0)]).unwrap();
        let f = ChainMap::new(
            zero,
            c.clone(),
            vec![Matrix::zeros(1, 0), Matrix::zeros(1, 0)],
        )
        .unwrap();
        let g = ChainMap::identity(&c);
        let ses = SesOfComplexes::new(f, g).unwrap();
        let r = snake_delta_class(&ses, 0, &m(&[&[1]]), &mut Choice::Canonical);
        assert!(matches!(r, Err(Error::ChaseFailure(_))));
    }

    #[test]
    fn split_ses_has_zero_connecting_map() {
        let a = VectorComplex::zero_differentials(vec![1, 1, 1]);
        let b = VectorComplex::zero_differentials(vec![1, 1, 1]);
        let mid = VectorComplex::zero_differentials(vec![2, 2, 2]);
        let inc = m(&[&[1], &[0]]);
        let proj = m(&[&[0, 1]]);
        let f = ChainMap::new(a, mid.clone(), vec![inc.clone(); 3]).unwrap();
        let g = ChainMap::new(mid, b, vec![proj; 3]).unwrap();
        let ses = SesOfComplexes::new(f, g).unwrap();
        for i in 0..2 {
            let d = snake_delta_matrix(&ses, i, &mut Choice::seeded(i as u64)).unwrap();
            assert!(d.is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let mut d = m(&[&[1], &[3]]);
        d[(1, 0)] = Rational::new(-1, 2);
        let c = VectorComplex::new(vec![1, 2, 0], vec![d, Matrix::zeros(0, 2)]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: VectorComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
