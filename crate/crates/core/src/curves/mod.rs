//! Space monomial curves `P(a,b,c) = ker(k[x,y,z] → k[t])`, their
//! 2×3 presentation matrices and the divisibility certificates.

mod matrix;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groebner::{eliminate_into, Ideal};
use crate::polyring::{Field, Monomial, Polynomial, Ring, RingRef};

pub use matrix::{normalize_matrix, CurveMatrix, Pattern};

/// Three distinct positive exponents, kept sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    sorted: [u32; 3],
    original: [u32; 3],
}

impl CurveSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        let original = [a, b, c];
        if original.contains(&0) {
            return Err(Error::InvalidArgument("curve exponents must be positive".into()));
        }
        let mut sorted = original;
        sorted.sort_unstable();
        if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
            return Err(Error::InvalidArgument(format!("curve exponents {a},{b},{c} must be distinct")));
        }
        Ok(CurveSpec { sorted, original })
    }

    /// Parses `a,b,c`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<u32> = text
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("expected a,b,c, got \"{text}\"")))?;
        match parts[..] {
            [a, b, c] => Self::new(a, b, c),
            _ => Err(Error::InvalidArgument(format!("expected three exponents, got \"{text}\""))),
        }
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.sorted
    }

    pub fn original(&self) -> [u32; 3] {
        self.original
    }

    /// `perm[i]` is the position of `original[i]` in the sorted triple.
    pub fn permutation(&self) -> [usize; 3] {
        let mut perm = [0; 3];
        for (i, e) in self.original.iter().enumerate() {
            perm[i] = self.sorted.iter().position(|s| s == e).expect("present");
        }
        perm
    }

    /// The sorted triple divided by its gcd.
    pub fn reduced(&self) -> [u32; 3] {
        let g = self.sorted[0].gcd(&self.sorted[1]).gcd(&self.sorted[2]);
        self.sorted.map(|e| e / g)
    }
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.sorted;
        write!(f, "P({a},{b},{c})")
    }
}

/// `eliminate((x − t^a, y − t^b, z − t^c), t)` in `k[x,y,z]`.
pub fn semigroup_kernel<F: Field>(spec: &CurveSpec, field: &F) -> Result<Ideal<F>> {
    semigroup_kernel_in(spec, &Ring::xyz(field.clone()), &Default::default())
}

pub fn semigroup_kernel_in<F: Field>(
    spec: &CurveSpec,
    target: &RingRef<F>,
    limits: &crate::groebner::ResourceLimits,
) -> Result<Ideal<F>> {
    if target.nvars() != 3 {
        return Err(Error::Structural("curve kernels live in a three-variable ring".into()));
    }
    let mut names = target.vars().to_vec();
    let mut t = "t".to_string();
    while names.contains(&t) {
        t.push('t');
    }
    names.push(t);
    let ring = Ring::new(&names, target.field().clone(), crate::polyring::TermOrder::Grevlex)?;
    let e = spec.reduced();
    let t = Polynomial::var(&ring, 3);
    let gens = (0..3)
        .map(|i| Ok(&Polynomial::var(&ring, i) - &t.pow(e[i])?))
        .collect::<Result<Vec<_>>>()?;
    let aux = Ideal::new(&ring, gens)?.with_limits(limits.clone());
    eliminate_into(&aux, &[3], target)
}

/// A minimal generating set of an ideal homogeneous for `weights`, chosen
/// greedily from its reduced basis by increasing degree.
pub fn minimal_generators<F: Field>(ideal: &Ideal<F>, weights: &[u32]) -> Result<Vec<Polynomial<F>>> {
    let mut gens: Vec<Polynomial<F>> = ideal.gb()?.elements().to_vec();
    gens.sort_by_key(|g| g.weighted_degree(weights).unwrap_or(0));
    let mut kept: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        let span = Ideal::new(ideal.ring(), kept.clone())?.with_limits(ideal.limits().clone());
        if !span.contains(&g)? {
            kept.push(g);
        }
    }
    Ok(kept)
}

pub fn is_complete_intersection<F: Field>(spec: &CurveSpec, field: &F) -> Result<bool> {
    let p = semigroup_kernel(spec, field)?;
    Ok(minimal_generators(&p, &spec.reduced())?.len() == 2)
}

/// Exponents of `[[x^α3, y^β1, z^γ2], [z^γ1, x^α2, y^β3]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HerzogExponents {
    pub alpha2: u32,
    pub alpha3: u32,
    pub beta1: u32,
    pub beta3: u32,
    pub gamma1: u32,
    pub gamma2: u32,
}

impl HerzogExponents {
    fn total(&self) -> u32 {
        self.alpha2 + self.alpha3 + self.beta1 + self.beta3 + self.gamma1 + self.gamma2
    }

    pub fn matrix<F: Field>(&self, ring: &RingRef<F>) -> Result<CurveMatrix<F>> {
        let m = |v: usize, e: u32| Polynomial::monomial(ring, Monomial::var(3, v, e));
        CurveMatrix::new(
            ring,
            [
                [m(0, self.alpha3), m(1, self.beta1), m(2, self.gamma2)],
                [m(2, self.gamma1), m(0, self.alpha2), m(1, self.beta3)],
            ],
        )
    }
}

#[derive(Clone, Debug)]
pub struct HerzogData<F: Field> {
    pub spec: CurveSpec,
    pub kernel: Ideal<F>,
    pub minimal_generators: Vec<Polynomial<F>>,
    pub complete_intersection: bool,
    pub exponents: Option<HerzogExponents>,
    pub matrix: Option<CurveMatrix<F>>,
}

/// Kernel of the curve and, when it is not a complete intersection, a
/// presentation matrix in the monomial template whose minors generate it.
pub fn herzog_matrix<F: Field>(spec: &CurveSpec, field: &F) -> Result<HerzogData<F>> {
    herzog_matrix_in(spec, &Ring::xyz(field.clone()), &Default::default())
}

pub fn herzog_matrix_in<F: Field>(
    spec: &CurveSpec,
    ring: &RingRef<F>,
    limits: &crate::groebner::ResourceLimits,
) -> Result<HerzogData<F>> {
    let kernel = semigroup_kernel_in(spec, ring, limits)?;
    let w = spec.reduced();
    let mins = minimal_generators(&kernel, &w)?;
    let mut data = HerzogData {
        spec: *spec,
        kernel: kernel.clone(),
        minimal_generators: mins.clone(),
        complete_intersection: mins.len() == 2,
        exponents: None,
        matrix: None,
    };
    if data.complete_intersection {
        return Ok(data);
    }
    let mut target: Vec<u64> = mins.iter().map(|g| g.weighted_degree(&w).unwrap_or(0)).collect();
    target.sort_unstable();
    let [a, b, c] = w.map(|e| e as i64);
    let bound = (a + b + c) as u32;
    let mut candidates = Vec::new();
    for alpha2 in 1..=bound {
        for alpha3 in 1..=bound {
            for beta1 in 1..=bound {
                let num = a * (alpha2 + alpha3) as i64 - b * beta1 as i64;
                if num <= 0 || num % c != 0 || num / c > bound as i64 {
                    continue;
                }
                let gamma1 = (num / c) as u32;
                for beta3 in 1..=bound {
                    let num = b * (beta1 + beta3) as i64 - a * alpha2 as i64;
                    if num <= 0 || num % c != 0 || num / c > bound as i64 {
                        continue;
                    }
                    let gamma2 = (num / c) as u32;
                    if c * (gamma1 + gamma2) as i64 != a * alpha3 as i64 + b * beta3 as i64 {
                        continue;
                    }
                    let mut degs = vec![
                        (a * (alpha2 + alpha3) as i64) as u64,
                        (b * (beta1 + beta3) as i64) as u64,
                        (c * (gamma1 + gamma2) as i64) as u64,
                    ];
                    degs.sort_unstable();
                    if degs == target {
                        candidates.push(HerzogExponents { alpha2, alpha3, beta1, beta3, gamma1, gamma2 });
                    }
                }
            }
        }
    }
    candidates.sort_by_key(|h| {
        (h.total(), [h.alpha3, h.beta1, h.gamma2, h.gamma1, h.alpha2, h.beta3])
    });
    for h in candidates {
        let m = h.matrix(ring)?;
        let minors = m.ideal()?.with_limits(limits.clone());
        let inside = m.minors().iter().all(|f| kernel.contains(f).unwrap_or(false));
        if inside && crate::idealops::contains(&minors, &kernel)? {
            data.exponents = Some(h);
            data.matrix = Some(m);
            return Ok(data);
        }
    }
    Err(Error::NotFound(format!("no presentation matrix of template form for {spec}")))
}

/// How a containment was certified without a membership computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<F: Field> {
    /// A row/column variant of the matrix meets a divisibility pattern.
    Pattern { pattern: Pattern, matrix: CurveMatrix<F> },
    /// `I^(n) ⊆ I^(2q−1) ⊆ I^[q] ⊆ I^q ⊆ I^m` for a prime power `q`; needs
    /// `I₂(M)` radical of height 2.
    Frobenius { q: u64 },
}

#[derive(Clone, Debug)]
pub struct CertifiedContainment<F: Field> {
    pub n: u32,
    pub m: u32,
    pub certificate: Certificate<F>,
}

/// Smallest `q = p^e ≥ m` with `h(q − 1) + 1 ≤ n`.
pub fn frobenius_bound(p: u64, h: u32, n: u32, m: u32) -> Option<u64> {
    if p < 2 {
        return None;
    }
    let mut q = p;
    while q < m as u64 {
        q = q.checked_mul(p)?;
    }
    (h as u64 * (q - 1) < n as u64).then_some(q)
}

/// Containments among (3,2), (5,3), (4,3) certified by divisibility
/// patterns of row/column variants of `M`, or by a Frobenius bound in
/// small characteristic. Sound, not complete.
pub fn divisibility_criterion<F: Field>(m: &CurveMatrix<F>) -> Vec<CertifiedContainment<F>> {
    let p = m.ring().field().characteristic();
    let mut out = Vec::new();
    for pattern in [Pattern::ThreeTwo, Pattern::FiveThree, Pattern::FourThree] {
        let (n, mm) = pattern.containment();
        let cert = if pattern.excluded(p) {
            frobenius_bound(p, 2, n, mm).map(|q| Certificate::Frobenius { q })
        } else {
            normalize_matrix(m, pattern).map(|matrix| Certificate::Pattern { pattern, matrix })
        };
        if let Some(certificate) = cert {
            out.push(CertifiedContainment { n, m: mm, certificate });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealops::equal;
    use crate::polyring::PrimeField;

    fn k() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn specs() {
        let s = CurveSpec::new(5, 3, 4).unwrap();
        assert_eq!(s.exponents(), [3, 4, 5]);
        assert_eq!(s.permutation(), [2, 0, 1]);
        assert!(CurveSpec::new(3, 3, 4).is_err());
        assert_eq!(CurveSpec::new(4, 6, 10).unwrap().reduced(), [2, 3, 5]);
        assert_eq!(CurveSpec::parse("9, 11,14").unwrap().exponents(), [9, 11, 14]);
    }

    #[test]
    fn kernels() {
        let r = Ring::xyz(k());
        let p = semigroup_kernel(&CurveSpec::new(1, 2, 3).unwrap(), &k()).unwrap();
        assert!(equal(&p, &Ideal::parse(&r, &["y - x^2", "z - x^3"]).unwrap()).unwrap());
        let p = semigroup_kernel(&CurveSpec::new(3, 4, 5).unwrap(), &k()).unwrap();
        let expect = Ideal::parse(&r, &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]).unwrap();
        assert!(equal(&p, &expect).unwrap());
        for g in p.gens() {
            assert!(g.is_homogeneous(&[3, 4, 5]));
        }
    }

    #[test]
    fn herzog_345() {
        let h = herzog_matrix(&CurveSpec::new(3, 4, 5).unwrap(), &k()).unwrap();
        assert!(!h.complete_intersection);
        assert_eq!(h.matrix.unwrap().to_string(), "x^2, y, z | z, x, y");
        let h = herzog_matrix(&CurveSpec::new(4, 6, 9).unwrap(), &k()).unwrap();
        assert!(h.complete_intersection);
        assert!(h.matrix.is_none());
        assert!(is_complete_intersection(&CurveSpec::new(1, 2, 3).unwrap(), &k()).unwrap());
    }

    #[test]
    fn herzog_9_11_14() {
        let h = herzog_matrix(&CurveSpec::new(9, 11, 14).unwrap(), &k()).unwrap();
        let r = Ring::xyz(k());
        let paper = CurveMatrix::parse("z, y^3, x^3 | x, z^2, y^2", &r).unwrap();
        assert!(equal(&h.matrix.unwrap().ideal().unwrap(), &paper.ideal().unwrap()).unwrap());
    }

    #[test]
    fn frobenius_bounds() {
        assert_eq!(frobenius_bound(2, 2, 3, 2), Some(2));
        assert_eq!(frobenius_bound(3, 2, 5, 3), Some(3));
        assert_eq!(frobenius_bound(2, 2, 5, 3), None);
        assert_eq!(frobenius_bound(0, 2, 5, 3), None);
    }
}
