//! Finite-dimensional modules over `Λ = Q[x]/(x^m)`.
//!
//! A module is a vector space with a nilpotent operator `X` (`X^m = 0`);
//! morphisms are matrices that intertwine the operators. The injective
//! objects are exactly the free modules. The functor `F = Hom_Λ(A, -)` is
//! realized on bases of intertwiner spaces.
//!
//! The free module `Λ^r` has a standard basis: block `b`, power `j` sits at
//! index `b * m + j`, and `x` shifts `j` to `j + 1` within a block.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::choice::Choice;
use crate::error::{Error, Result};
use crate::linalg::{
    image_basis, kernel_basis, quotient, solve, solve_with, subquotient, Matrix, Subspace,
};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedAlgebra {
    m: usize,
}

impl TruncatedAlgebra {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModule(format!(
                "truncation order must be at least 2, got {m}"
            )));
        }
        Ok(TruncatedAlgebra { m })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// The simple module `k`.
    pub fn simple(&self) -> LambdaModule {
        LambdaModule::cyclic(self.m, 1)
    }

    /// The regular module `Λ` in the basis `1, x, ..., x^{m-1}`.
    pub fn regular(&self) -> LambdaModule {
        LambdaModule::free(self.m, 1)
    }
}

/// A `Λ`-module: the action of `x` as a nilpotent matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaModule {
    m: usize,
    action: Arc<Matrix>,
}

/// Lower shift of size `j`: `e_i -> e_{i+1}`.
fn shift(j: usize) -> Matrix {
    Matrix::from_fn(j, j, |r, c| {
        if r == c + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

impl LambdaModule {
    /// Validates `X^m = 0`.
    pub fn new(m: usize, action: Matrix) -> Result<Self> {
        TruncatedAlgebra::new(m)?;
        if !action.is_square() {
            return Err(Error::InvalidModule(format!(
                "action must be square, got {}x{}",
                action.rows(),
                action.cols()
            )));
        }
        if !action.pow(m as u32).is_zero() {
            return Err(Error::InvalidModule(format!("X^{m} is not zero")));
        }
        Ok(LambdaModule {
            m,
            action: Arc::new(action),
        })
    }

    fn new_unchecked(m: usize, action: Matrix) -> Self {
        debug_assert!(action.pow(m as u32).is_zero());
        LambdaModule {
            m,
            action: Arc::new(action),
        }
    }

    pub fn zero(m: usize) -> Self {
        Self::new_unchecked(m, Matrix::zeros(0, 0))
    }

    /// `Λ^rank` in the standard basis.
    pub fn free(m: usize, rank: usize) -> Self {
        let s = shift(m);
        let blocks: Vec<&Matrix> = std::iter::repeat_n(&s, rank).collect();
        Self::new_unchecked(m, Matrix::block_diag(&blocks))
    }

    /// `Λ/(x^j)` with basis `1, x, ..., x^{j-1}`.
    pub fn cyclic(m: usize, j: usize) -> Self {
        assert!(j <= m, "cyclic module longer than the algebra");
        Self::new_unchecked(m, shift(j))
    }

    /// Direct sum of cyclic modules with the given block lengths.
    pub fn from_blocks(m: usize, lengths: &[usize]) -> Self {
        let blocks: Vec<Matrix> = lengths.iter().map(|&j| shift(j)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Self::new_unchecked(m, Matrix::block_diag(&refs))
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn algebra(&self) -> TruncatedAlgebra {
        TruncatedAlgebra { m: self.m }
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// `Some(r)` if this is literally `Λ^r` in the standard basis.
    pub fn standard_free_rank(&self) -> Option<usize> {
        if !self.dim().is_multiple_of(self.m) {
            return None;
        }
        let r = self.dim() / self.m;
        (*self.action == *LambdaModule::free(self.m, r).action).then_some(r)
    }

    /// `X` restricted to an invariant subspace, in the subspace basis.
    fn restrict(&self, sub: &Subspace) -> LambdaModule {
        let moved = self.action.as_ref() * sub.basis();
        let coords = sub
            .coordinates(&moved)
            .expect("subspace is not invariant under the action");
        Self::new_unchecked(self.m, coords)
    }

    fn same_algebra(&self, other: &LambdaModule) -> Result<()> {
        if self.m != other.m {
            return Err(Error::InvalidModule(format!(
                "modules over different algebras (m = {} and m = {})",
                self.m, other.m
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LambdaModule(m={}, dim={}, X={})",
            self.m,
            self.dim(),
            self.action
        )
    }
}

/// A `Λ`-linear map.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    src: LambdaModule,
    dst: LambdaModule,
    matrix: Matrix,
}

impl ModuleMap {
    /// Validates shape and `f X_src = X_dst f`.
    pub fn new(src: LambdaModule, dst: LambdaModule, matrix: Matrix) -> Result<Self> {
        src.same_algebra(&dst)?;
        if matrix.shape() != (dst.dim(), src.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.dim(),
                src.dim()
            )));
        }
        if &matrix * src.action() != dst.action() * &matrix {
            return Err(Error::NotAModuleMap(format!(
                "{}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(ModuleMap { src, dst, matrix })
    }

    pub(crate) fn new_unchecked(src: LambdaModule, dst: LambdaModule, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.shape(), (dst.dim(), src.dim()));
        debug_assert!(&matrix * src.action() == dst.action() * &matrix);
        ModuleMap { src, dst, matrix }
    }

    pub fn identity(m: &LambdaModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.dim()))
    }

    pub fn zero(src: &LambdaModule, dst: &LambdaModule) -> Self {
        Self::new_unchecked(
            src.clone(),
            dst.clone(),
            Matrix::zeros(dst.dim(), src.dim()),
        )
    }

    pub fn src(&self) -> &LambdaModule {
        &self.src
    }

    pub fn dst(&self) -> &LambdaModule {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_intertwining(&self) -> bool {
        &self.matrix * self.src.action() == self.dst.action() * &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        if self.dst != next.src {
            return Err(Error::DimensionMismatch(
                "composing maps with mismatched objects".into(),
            ));
        }
        Ok(Self::new_unchecked(
            self.src.clone(),
            next.dst.clone(),
            &next.matrix * &self.matrix,
        ))
    }

    pub fn scale(&self, s: &Rational) -> ModuleMap {
        Self::new_unchecked(self.src.clone(), self.dst.clone(), self.matrix.scale(s))
    }

    pub fn is_mono(&self) -> bool {
        self.matrix.rank() == self.src.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.matrix.rank() == self.dst.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim() == self.dst.dim() && self.is_mono()
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleMap({} -> {}, {})",
            self.src.dim(),
            self.dst.dim(),
            self.matrix
        )
    }
}

/// `0 -> A -> C -> B -> 0`.
#[derive(Clone, Debug)]
pub struct SesModules {
    a_to_c: ModuleMap,
    c_to_b: ModuleMap,
}

impl SesModules {
    pub fn new(a_to_c: ModuleMap, c_to_b: ModuleMap) -> Result<Self> {
        if a_to_c.dst != c_to_b.src {
            return Err(Error::DimensionMismatch(
                "short exact sequence maps do not compose".into(),
            ));
        }
        if !a_to_c.is_mono() {
            return Err(Error::ConstructionFailure("A -> C is not injective".into()));
        }
        if !c_to_b.is_epi() {
            return Err(Error::ConstructionFailure(
                "C -> B is not surjective".into(),
            ));
        }
        if image_basis(&a_to_c.matrix) != kernel_basis(&c_to_b.matrix) {
            return Err(Error::ConstructionFailure(
                "image of A -> C differs from kernel of C -> B".into(),
            ));
        }
        Ok(SesModules { a_to_c, c_to_b })
    }

    /// `0 -> A -> A ⊕ B -> B -> 0`.
    pub fn split(a: &LambdaModule, b: &LambdaModule) -> Result<Self> {
        let sum = direct_sum(a, b)?;
        let [ia, _] = sum.inclusions;
        let [_, pb] = sum.projections;
        SesModules::new(ia, pb)
    }

    pub fn a_to_c(&self) -> &ModuleMap {
        &self.a_to_c
    }

    pub fn c_to_b(&self) -> &ModuleMap {
        &self.c_to_b
    }

    pub fn sub(&self) -> &LambdaModule {
        &self.a_to_c.src
    }

    pub fn middle(&self) -> &LambdaModule {
        &self.a_to_c.dst
    }

    pub fn quotient(&self) -> &LambdaModule {
        &self.c_to_b.dst
    }
}

/// Basis of `Hom_Λ(A, B)` inside the space of `dim B x dim A` matrices,
/// flattened row-major.
pub fn hom_space(a: &LambdaModule, b: &LambdaModule) -> Result<Subspace> {
    a.same_algebra(b)?;
    // vec(f X_A) - vec(X_B f) = (I ⊗ X_A^T - X_B ⊗ I) vec(f) for row-major vec.
    let lhs = Matrix::identity(b.dim()).kron(&a.action().transpose());
    let rhs = b.action().kron(&Matrix::identity(a.dim()));
    Ok(kernel_basis(&(&lhs - &rhs)))
}

pub fn kernel_module(f: &ModuleMap) -> (LambdaModule, ModuleMap) {
    let ker = kernel_basis(&f.matrix);
    let module = f.src.restrict(&ker);
    let inclusion = ModuleMap::new_unchecked(module.clone(), f.src.clone(), ker.basis().clone());
    (module, inclusion)
}

pub fn cokernel_module(f: &ModuleMap) -> (LambdaModule, ModuleMap) {
    let q = quotient(f.dst.dim(), &image_basis(&f.matrix)).expect("ambient dims agree");
    let action = q.reduction() * &(f.dst.action() * q.representatives());
    let module = LambdaModule::new_unchecked(f.dst.m, action);
    let projection = ModuleMap::new_unchecked(f.dst.clone(), module.clone(), q.reduction().clone());
    (module, projection)
}

/// The image of `f` as a submodule of its target.
pub fn image_module(f: &ModuleMap) -> (LambdaModule, ModuleMap) {
    let im = image_basis(&f.matrix);
    let module = f.dst.restrict(&im);
    let inclusion = ModuleMap::new_unchecked(module.clone(), f.dst.clone(), im.basis().clone());
    (module, inclusion)
}

/// Biproduct `M ⊕ N` with its structural maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: LambdaModule,
    pub inclusions: [ModuleMap; 2],
    pub projections: [ModuleMap; 2],
}

pub fn direct_sum(a: &LambdaModule, b: &LambdaModule) -> Result<DirectSum> {
    a.same_algebra(b)?;
    let module = LambdaModule::new_unchecked(a.m, Matrix::block_diag(&[a.action(), b.action()]));
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let ia = Matrix::identity(n).block(0, 0, n, da);
    let ib = Matrix::identity(n).block(0, da, n, db);
    Ok(DirectSum {
        inclusions: [
            ModuleMap::new_unchecked(a.clone(), module.clone(), ia.clone()),
            ModuleMap::new_unchecked(b.clone(), module.clone(), ib.clone()),
        ],
        projections: [
            ModuleMap::new_unchecked(module.clone(), a.clone(), ia.transpose()),
            ModuleMap::new_unchecked(module.clone(), b.clone(), ib.transpose()),
        ],
        module,
    })
}

/// Direct sum of a list of modules (block-diagonal action).
pub fn direct_sum_all(m: usize, parts: &[&LambdaModule]) -> LambdaModule {
    let actions: Vec<&Matrix> = parts.iter().map(|p| p.action()).collect();
    LambdaModule::new_unchecked(m, Matrix::block_diag(&actions))
}

/// Injective iff free: `m * rank(X^{m-1}) = dim`.
pub fn is_injective(module: &LambdaModule) -> bool {
    let top = module.action().pow(module.m as u32 - 1);
    module.m * top.rank() == module.dim()
}

/// One block of the nilpotent canonical form: the chain
/// `g, Xg, ..., X^{len-1} g` with `X^len g = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentBlock {
    pub length: usize,
    pub generator: Matrix,
}

/// Canonical form of the action: blocks ordered by decreasing length, and
/// the change-of-basis matrix whose columns are the chains in order.
#[derive(Clone, Debug)]
pub struct NilpotentForm {
    pub blocks: Vec<NilpotentBlock>,
    pub basis: Matrix,
}

impl NilpotentForm {
    pub fn lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.length).collect()
    }
}

/// Chains are generated level by level: at level `j` the generators are the
/// pivot complement of `ker X^{j-1} + X ker X^{j+1}` inside `ker X^j`.
pub fn nilpotent_form(module: &LambdaModule) -> Result<NilpotentForm> {
    let n = module.dim();
    let m = module.m;
    let x = module.action();
    let mut kernels = Vec::with_capacity(m + 2);
    let mut power = Matrix::identity(n);
    for _ in 0..=m {
        kernels.push(kernel_basis(&power));
        power = x * &power;
    }
    kernels.push(Subspace::full(n));
    let mut blocks = Vec::new();
    for j in (1..=m).rev() {
        let lower = kernels[j - 1].sum(&kernels[j + 1].image_under(x));
        let complement = subquotient(&kernels[j], &lower)
            .map_err(|e| Error::ConstructionFailure(format!("nilpotent form at level {j}: {e}")))?;
        for g in complement.representatives().columns() {
            blocks.push(NilpotentBlock {
                length: j,
                generator: g,
            });
        }
    }
    let mut columns = Vec::with_capacity(n);
    for b in &blocks {
        let mut v = b.generator.clone();
        for _ in 0..b.length {
            let next = x * &v;
            columns.push(v);
            v = next;
        }
        if !v.is_zero() {
            return Err(Error::ConstructionFailure(
                "chain does not terminate at its length".into(),
            ));
        }
    }
    let basis = Matrix::from_columns(n, &columns);
    if columns.len() != n || !basis.is_invertible() {
        return Err(Error::ConstructionFailure(format!(
            "chains give {} vectors of rank {} in dimension {n}",
            columns.len(),
            basis.rank()
        )));
    }
    Ok(NilpotentForm { blocks, basis })
}

/// Embeds `M` into a standard free module: each block `Λ/(x^j)` goes to its
/// own copy of `Λ` via multiplication by `x^{m-j}`.
pub fn embed_into_injective(module: &LambdaModule) -> Result<(LambdaModule, ModuleMap)> {
    let m = module.m;
    let form = nilpotent_form(module)?;
    let target = LambdaModule::free(m, form.blocks.len());
    let mut chain_image = Matrix::zeros(target.dim(), module.dim());
    let mut col = 0;
    for (b, block) in form.blocks.iter().enumerate() {
        for i in 0..block.length {
            chain_image[(b * m + m - block.length + i, col)] = Rational::one();
            col += 1;
        }
    }
    let inv = form
        .basis
        .inverse()
        .ok_or_else(|| Error::ConstructionFailure("canonical basis not invertible".into()))?;
    let mono = ModuleMap::new(module.clone(), target.clone(), &chain_image * &inv)
        .map_err(|e| Error::ConstructionFailure(format!("embedding: {e}")))?;
    if !mono.is_mono() {
        return Err(Error::ConstructionFailure(
            "embedding is not injective".into(),
        ));
    }
    Ok((target, mono))
}

/// Finds `h: Y -> E` with `h ∘ along = g`, where `along: X -> Y` and
/// `g: X -> E`, with `E` injective. Solvable whenever `g` vanishes on the
/// kernel of `along`.
pub fn extend_to_injective(
    along: &ModuleMap,
    g: &ModuleMap,
    choice: &mut Choice,
) -> Result<ModuleMap> {
    if along.src != g.src {
        return Err(Error::DimensionMismatch(
            "extension: maps have different sources".into(),
        ));
    }
    let target = &g.dst;
    if let Some(rank) = target.standard_free_rank() {
        return extend_into_free(along, g, rank, choice);
    }
    if !is_injective(target) {
        return lift_via_hom_space(along, g, choice)?.ok_or_else(|| {
            Error::ConstructionFailure("no extension into non-injective target".into())
        });
    }
    // Transport to the standard free module through an isomorphism.
    let (free, iso) = embed_into_injective(target)?;
    let rank = free.dim() / free.m;
    let moved = g.then(&iso)?;
    let h = extend_into_free(along, &moved, rank, choice)?;
    let back = iso
        .matrix
        .inverse()
        .ok_or_else(|| Error::ConstructionFailure("injective is not free".into()))?;
    let h = ModuleMap::new_unchecked(along.dst.clone(), target.clone(), &back * h.matrix());
    Ok(h)
}

/// A `Λ`-map `Y -> Λ` is determined by its `x^{m-1}` coefficient, a linear
/// functional `λ`; the full map is `y -> Σ_j λ(X^j y) x^{m-1-j}`.
fn extend_into_free(
    along: &ModuleMap,
    g: &ModuleMap,
    rank: usize,
    choice: &mut Choice,
) -> Result<ModuleMap> {
    let m = g.dst.m;
    let y = &along.dst;
    let tops: Vec<usize> = (0..rank).map(|b| b * m + m - 1).collect();
    let top_g = g.matrix.select_rows(&tops);
    let functionals = solve_with(&along.matrix.transpose(), &top_g.transpose(), choice)?
        .ok_or_else(|| {
            Error::ConstructionFailure(
                "map does not vanish on the kernel it must factor through".into(),
            )
        })?
        .transpose();
    let mut h = Matrix::zeros(rank * m, y.dim());
    let mut powers = Vec::with_capacity(m);
    let mut p = Matrix::identity(y.dim());
    for _ in 0..m {
        powers.push(p.clone());
        p = y.action() * &p;
    }
    for b in 0..rank {
        let lam = functionals.block(b, 0, 1, y.dim());
        for i in 0..m {
            let row = &lam * &powers[m - 1 - i];
            h.set_block(b * m + i, 0, &row);
        }
    }
    let h = ModuleMap::new_unchecked(y.clone(), g.dst.clone(), h);
    if &h.matrix * &along.matrix != g.matrix {
        return Err(Error::ConstructionFailure(
            "extension does not restrict to the given map".into(),
        ));
    }
    Ok(h)
}

/// Solves `h ∘ along = g` over the full intertwiner space `Hom(Y, E)`,
/// for any target.
pub fn lift_via_hom_space(
    along: &ModuleMap,
    g: &ModuleMap,
    choice: &mut Choice,
) -> Result<Option<ModuleMap>> {
    let y = &along.dst;
    let e = &g.dst;
    let homs = hom_space(y, e)?;
    // vec(h U) = (I_E ⊗ U^T) vec(h).
    let compose = Matrix::identity(e.dim()).kron(&along.matrix.transpose());
    let system = &compose * homs.basis();
    let Some(coeffs) = solve_with(&system, &g.matrix.flatten(), choice)? else {
        return Ok(None);
    };
    let h = Matrix::unflatten(&(homs.basis() * &coeffs), e.dim(), y.dim());
    Ok(Some(ModuleMap::new_unchecked(y.clone(), e.clone(), h)))
}

/// Finds `h: X -> B` with `along ∘ h = g` for `along: B -> C`, `g: X -> C`,
/// i.e. factors `g` through `along` (a plain linear solve suffices when
/// `along` is mono; the result is then automatically `Λ`-linear).
pub fn factor_through_mono(along: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    let h = solve(&along.matrix, &g.matrix)?
        .ok_or_else(|| Error::ConstructionFailure("map does not factor through the mono".into()))?;
    ModuleMap::new(g.src.clone(), along.src.clone(), h)
}

/// The functor `F = Hom_Λ(A, -)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorSpec {
    algebra: TruncatedAlgebra,
    source: LambdaModule,
}

/// `F(M)` as a vector space: the intertwiner space with its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FObject {
    pub module: LambdaModule,
    pub basis: Subspace,
}

impl FObject {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

impl FunctorSpec {
    pub fn new(source: LambdaModule) -> Self {
        FunctorSpec {
            algebra: source.algebra(),
            source,
        }
    }

    /// `Hom(k, -)`, the socle functor.
    pub fn socle(m: usize) -> Result<Self> {
        Ok(Self::new(TruncatedAlgebra::new(m)?.simple()))
    }

    pub fn algebra(&self) -> TruncatedAlgebra {
        self.algebra
    }

    pub fn source(&self) -> &LambdaModule {
        &self.source
    }

    pub fn apply_object(&self, module: &LambdaModule) -> Result<FObject> {
        Ok(FObject {
            module: module.clone(),
            basis: hom_space(&self.source, module)?,
        })
    }

    /// Matrix of post-composition with `f` between given `F`-bases.
    pub fn apply_map_between(&self, src: &FObject, dst: &FObject, f: &ModuleMap) -> Result<Matrix> {
        if src.module != f.src || dst.module != f.dst {
            return Err(Error::DimensionMismatch(
                "F-objects do not match the map".into(),
            ));
        }
        let post = f.matrix.kron(&Matrix::identity(self.source.dim()));
        let images = &post * src.basis.basis();
        dst.basis.coordinates(&images).ok_or_else(|| {
            Error::NotAModuleMap("post-composition leaves the intertwiner space".into())
        })
    }

    pub fn apply_map(&self, f: &ModuleMap) -> Result<Matrix> {
        let src = self.apply_object(&f.src)?;
        let dst = self.apply_object(&f.dst)?;
        self.apply_map_between(&src, &dst, f)
    }

    /// Exactness of `0 -> FA -> FC -> FB` at `FA` and `FC`.
    pub fn check_left_exactness(&self, ses: &SesModules) -> Result<bool> {
        let (fa, fb) = self.ses_images(ses)?;
        Ok(fa.rank() == fa.cols() && image_basis(&fa) == kernel_basis(&fb))
    }

    /// Whether `FC -> FB` is onto.
    pub fn is_right_exact_on(&self, ses: &SesModules) -> Result<bool> {
        let (_, fb) = self.ses_images(ses)?;
        Ok(fb.rank() == fb.rows())
    }

    fn ses_images(&self, ses: &SesModules) -> Result<(Matrix, Matrix)> {
        let a = self.apply_object(ses.sub())?;
        let c = self.apply_object(ses.middle())?;
        let b = self.apply_object(ses.quotient())?;
        let fa = self.apply_map_between(&a, &c, &ses.a_to_c)?;
        let fb = self.apply_map_between(&c, &b, &ses.c_to_b)?;
        Ok((fa, fb))
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    m: usize,
    dim: usize,
    #[serde(rename = "X")]
    x: Matrix,
}

impl Serialize for LambdaModule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ModuleFile {
            m: self.m,
            dim: self.dim(),
            x: (*self.action).clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LambdaModule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ModuleFile::deserialize(deserializer)?;
        let x = if file.dim == 0 {
            Matrix::zeros(0, 0)
        } else {
            file.x
        };
        if x.shape() != (file.dim, file.dim) {
            return Err(serde::de::Error::custom("X does not match dim"));
        }
        LambdaModule::new(file.m, x).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MapFile {
    src: LambdaModule,
    dst: LambdaModule,
    f: Matrix,
}

impl Serialize for ModuleMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MapFile {
            src: self.src.clone(),
            dst: self.dst.clone(),
            f: self.matrix.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModuleMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = MapFile::deserialize(deserializer)?;
        let f = if file.dst.dim() == 0 || file.src.dim() == 0 {
            Matrix::zeros(file.dst.dim(), file.src.dim())
        } else {
            file.f
        };
        ModuleMap::new(file.src, file.dst, f).map_err(serde::de::Error::custom)
    }
}
