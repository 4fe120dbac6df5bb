//! Ramification data of the three supported extension kinds and the
//! validation of their standing hypotheses.
//!
//! Inputs are valuations only: the pole orders `Φ` of Artin-Schreier
//! right-hand sides (already in standard form) or the valuations of a Kummer
//! generator. No curve equation is ever needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::boseck;
use crate::digits::{big_pow, is_prime};

/// Largest group order for which whole tables (one entry per basis index)
/// are materialized.
pub const TABLE_LIMIT: usize = 1 << 22;

/// `p`, the tower height `n` and `|G| = p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupParams {
    p: BigInt,
    n: u32,
    q: BigInt,
}

impl GroupParams {
    /// Primality of `p` and `n >= 1` are checked by [`validate_spec`], not here.
    pub fn new(p: impl Into<BigInt>, n: u32) -> Self {
        let p = p.into();
        let q = big_pow(&p, n);
        GroupParams { p, n, q }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> &BigInt {
        &self.q
    }

    /// `(p, p^n)` as machine words when a full table fits in memory.
    pub(crate) fn small(&self) -> Option<(usize, usize)> {
        let q = self.q.to_usize().filter(|&q| q <= TABLE_LIMIT)?;
        Some((self.p.to_usize()?, q))
    }
}

/// A ramified place of a cyclic tower: ramification index `p^e` and the
/// jump vector `Φ(i, 1..n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPlace {
    pub e: u32,
    pub phi: Vec<BigInt>,
}

impl CyclicPlace {
    pub fn new(e: u32, phi: Vec<BigInt>) -> Self {
        CyclicPlace { e, phi }
    }

    /// Totally ramified place: every level ramifies.
    pub fn total(phi: Vec<BigInt>) -> Self {
        CyclicPlace { e: phi.len() as u32, phi }
    }
}

/// A ramified place of `y^q - y = g(x) / prod (x - a_i)^{Φ(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElabPlace {
    pub phi: BigInt,
}

impl ElabPlace {
    pub fn new(phi: impl Into<BigInt>) -> Self {
        ElabPlace { phi: phi.into() }
    }
}

/// A ramified place of `y^n = u` with `0 < v(u) < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamePlace {
    pub vu: BigInt,
    /// `n / gcd(n, v(u))`
    pub e: BigInt,
    /// `e * v(u) / n`, the valuation of `y` at a place above.
    pub phi: BigInt,
}

impl TamePlace {
    pub fn new(vu: impl Into<BigInt>, n_deg: &BigInt) -> Self {
        let vu = vu.into();
        let g = n_deg.gcd(&vu);
        let e = if g.is_zero() { BigInt::one() } else { n_deg / &g };
        let phi = if n_deg.is_zero() { BigInt::zero() } else { (&e * &vu) / n_deg };
        TamePlace { vu, e, phi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Cyclic,
    ElementaryAbelian,
    Tame,
}

impl ExtensionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionKind::Cyclic => "cyclic",
            ExtensionKind::ElementaryAbelian => "elementary_abelian",
            ExtensionKind::Tame => "tame",
        }
    }

    pub fn is_wild(self) -> bool {
        !matches!(self, ExtensionKind::Tame)
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionSpec {
    /// Cyclic of order `p^n`, built as an Artin-Schreier-Witt tower over a
    /// base of genus `g_base`.
    CyclicTower {
        group: GroupParams,
        places: Vec<CyclicPlace>,
        g_base: BigInt,
    },
    /// Elementary abelian of order `p^n` over the rational function field;
    /// every ramified place is totally ramified.
    ElementaryAbelian {
        group: GroupParams,
        places: Vec<ElabPlace>,
    },
    /// Cyclic Kummer extension of degree `n_deg` prime to `p`.
    TameKummer {
        n_deg: BigInt,
        p: BigInt,
        places: Vec<TamePlace>,
        g_base: BigInt,
    },
}

impl ExtensionSpec {
    pub fn kind(&self) -> ExtensionKind {
        match self {
            ExtensionSpec::CyclicTower { .. } => ExtensionKind::Cyclic,
            ExtensionSpec::ElementaryAbelian { .. } => ExtensionKind::ElementaryAbelian,
            ExtensionSpec::TameKummer { .. } => ExtensionKind::Tame,
        }
    }

    pub fn characteristic(&self) -> &BigInt {
        match self {
            ExtensionSpec::CyclicTower { group, .. } | ExtensionSpec::ElementaryAbelian { group, .. } => group.p(),
            ExtensionSpec::TameKummer { p, .. } => p,
        }
    }

    /// `|G|`: `p^n` for the wild kinds, `n_deg` for the tame one.
    pub fn group_order(&self) -> BigInt {
        match self {
            ExtensionSpec::CyclicTower { group, .. } | ExtensionSpec::ElementaryAbelian { group, .. } => {
                group.order().clone()
            }
            ExtensionSpec::TameKummer { n_deg, .. } => n_deg.clone(),
        }
    }

    pub fn group(&self) -> Option<&GroupParams> {
        match self {
            ExtensionSpec::CyclicTower { group, .. } | ExtensionSpec::ElementaryAbelian { group, .. } => Some(group),
            ExtensionSpec::TameKummer { .. } => None,
        }
    }

    pub fn g_base(&self) -> BigInt {
        match self {
            ExtensionSpec::CyclicTower { g_base, .. } | ExtensionSpec::TameKummer { g_base, .. } => g_base.clone(),
            ExtensionSpec::ElementaryAbelian { .. } => BigInt::zero(),
        }
    }

    pub fn place_count(&self) -> usize {
        match self {
            ExtensionSpec::CyclicTower { places, .. } => places.len(),
            ExtensionSpec::ElementaryAbelian { places, .. } => places.len(),
            ExtensionSpec::TameKummer { places, .. } => places.len(),
        }
    }

    /// Ramification index of the `i`-th ramified place.
    pub fn ramification_index(&self, i: usize) -> BigInt {
        match self {
            ExtensionSpec::CyclicTower { group, places, .. } => big_pow(group.p(), places[i].e),
            ExtensionSpec::ElementaryAbelian { group, .. } => group.order().clone(),
            ExtensionSpec::TameKummer { places, .. } => places[i].e.clone(),
        }
    }

    /// Number of places of `F` above the `i`-th ramified place of `E`.
    pub fn places_above(&self, i: usize) -> BigInt {
        match self {
            ExtensionSpec::CyclicTower { group, places, .. } => big_pow(group.p(), group.n() - places[i].e),
            ExtensionSpec::ElementaryAbelian { .. } => BigInt::one(),
            ExtensionSpec::TameKummer { n_deg, places, .. } => n_deg / &places[i].e,
        }
    }

    pub fn has_totally_ramified_place(&self) -> bool {
        let order = self.group_order();
        (0..self.place_count()).any(|i| self.ramification_index(i) == order)
    }
}

/// Identifies which standing hypothesis a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    CharacteristicNotPrime,
    TowerHeightZero,
    NegativeBaseGenus,
    NoRamifiedPlace,
    UnramifiedNeedsBaseGenus,
    RationalBaseNeedsTotalRamification,
    RamificationExponentRange,
    JumpVectorLength,
    UnramifiedLevelJump,
    JumpNotStandard,
    JumpGrowth,
    PoleOrderNotStandard,
    DegreeNotPrimeToP,
    ValuationRange,
    KummerDataInconsistent,
    PrincipalDivisorDegree,
    ImprimitiveKummerGenerator,
    GenusTooSmall,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::CharacteristicNotPrime => "characteristic-not-prime",
            Rule::TowerHeightZero => "tower-height-zero",
            Rule::NegativeBaseGenus => "negative-base-genus",
            Rule::NoRamifiedPlace => "no-ramified-place",
            Rule::UnramifiedNeedsBaseGenus => "unramified-needs-base-genus",
            Rule::RationalBaseNeedsTotalRamification => "rational-base-needs-total-ramification",
            Rule::RamificationExponentRange => "ramification-exponent-range",
            Rule::JumpVectorLength => "jump-vector-length",
            Rule::UnramifiedLevelJump => "unramified-level-jump",
            Rule::JumpNotStandard => "jump-not-standard",
            Rule::JumpGrowth => "jump-growth",
            Rule::PoleOrderNotStandard => "pole-order-not-standard",
            Rule::DegreeNotPrimeToP => "degree-not-prime-to-p",
            Rule::ValuationRange => "valuation-range",
            Rule::KummerDataInconsistent => "kummer-data-inconsistent",
            Rule::PrincipalDivisorDegree => "principal-divisor-degree",
            Rule::ImprimitiveKummerGenerator => "imprimitive-kummer-generator",
            Rule::GenusTooSmall => "genus-too-small",
        }
    }

    /// The mathematical hypothesis behind the rule.
    pub fn hypothesis(self) -> &'static str {
        match self {
            Rule::CharacteristicNotPrime => "the constant field has prime characteristic p",
            Rule::TowerHeightZero => "|G| = p^n with n >= 1",
            Rule::NegativeBaseGenus => "genera are nonnegative",
            Rule::NoRamifiedPlace => "the extension has at least one ramified place",
            Rule::UnramifiedNeedsBaseGenus => "an unramified cyclic extension needs g_E >= 2 for g_F >= 2",
            Rule::RationalBaseNeedsTotalRamification => {
                "every extension of a rational function field ramifies, so some place is totally ramified (r = 0)"
            }
            Rule::RamificationExponentRange => "ramification index p^e with 1 <= e <= n",
            Rule::JumpVectorLength => "one jump Φ(i,j) per tower level",
            Rule::UnramifiedLevelJump => "Φ(i,j) = 0 on the unramified levels j <= n - e",
            Rule::JumpNotStandard => "standard form: Φ(i,j) > 0 and prime to p on ramified levels",
            Rule::JumpGrowth => "strict mode: Φ(i,j+1) >= p * Φ(i,j)",
            Rule::PoleOrderNotStandard => "standard form: Φ(i) >= 1 and prime to p",
            Rule::DegreeNotPrimeToP => "tame: the Kummer degree is prime to p",
            Rule::ValuationRange => "tame: 0 < v(u) < n at every ramified place",
            Rule::KummerDataInconsistent => "tame: e = n / gcd(n, v(u)) and Φ n = e v(u)",
            Rule::PrincipalDivisorDegree => "tame: div(u) has degree 0, so the sum of v(u) is divisible by n",
            Rule::ImprimitiveKummerGenerator => {
                "tame over a rational base: gcd(n, v(u)) = 1, otherwise an unramified subcover of P^1 would exist"
            }
            Rule::GenusTooSmall => "g_F >= 2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub place: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.rule.code())?;
        if let Some(i) = self.place {
            write!(f, "place {i}: ")?;
        }
        write!(f, "{} (requires: {})", self.detail, self.rule.hypothesis())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Genus of `F`, when the place data are well-formed enough to compute it.
    pub genus: Option<BigInt>,
    pub strict: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn genus_ok(&self) -> bool {
        self.genus.as_ref().is_some_and(|g| g >= &BigInt::from(2))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

struct Collector {
    violations: Vec<Violation>,
}

impl Collector {
    fn push(&mut self, rule: Rule, place: Option<usize>, detail: impl Into<String>) {
        self.violations.push(Violation { rule, place, detail: detail.into() });
    }
}

/// Check every standing hypothesis of `spec`. Never fails; all problems are
/// collected in the report. `strict` adds the cyclic jump-growth check.
pub fn validate_spec(spec: &ExtensionSpec, strict: bool) -> ValidationReport {
    let mut c = Collector { violations: Vec::new() };
    match spec {
        ExtensionSpec::CyclicTower { group, places, g_base } => {
            check_group(&mut c, group);
            check_base_genus(&mut c, g_base);
            if places.is_empty() && g_base < &BigInt::from(2) {
                c.push(Rule::UnramifiedNeedsBaseGenus, None, format!("no ramified place and g_base = {g_base}"));
            }
            let n = group.n();
            for (i, place) in places.iter().enumerate() {
                check_cyclic_place(&mut c, i, place, group, strict);
            }
            if g_base.is_zero() && !places.is_empty() && !places.iter().any(|pl| pl.e == n) {
                c.push(
                    Rule::RationalBaseNeedsTotalRamification,
                    None,
                    format!("g_base = 0 but no place has e = {n}"),
                );
            }
        }
        ExtensionSpec::ElementaryAbelian { group, places } => {
            check_group(&mut c, group);
            if places.is_empty() {
                c.push(Rule::NoRamifiedPlace, None, "empty place list");
            }
            for (i, place) in places.iter().enumerate() {
                if place.phi < BigInt::one() || !place.phi.gcd(group.p()).is_one() {
                    c.push(Rule::PoleOrderNotStandard, Some(i), format!("Φ = {}", place.phi));
                }
            }
        }
        ExtensionSpec::TameKummer { n_deg, p, places, g_base } => {
            if !is_prime(p) {
                c.push(Rule::CharacteristicNotPrime, None, format!("p = {p}"));
            }
            check_base_genus(&mut c, g_base);
            if !n_deg.is_positive() || !n_deg.gcd(p).is_one() {
                c.push(Rule::DegreeNotPrimeToP, None, format!("n = {n_deg}, p = {p}"));
            }
            if places.is_empty() {
                c.push(Rule::NoRamifiedPlace, None, "empty place list");
            }
            let mut shape_ok = n_deg.is_positive();
            for (i, place) in places.iter().enumerate() {
                if !place.vu.is_positive() || &place.vu >= n_deg {
                    c.push(Rule::ValuationRange, Some(i), format!("v(u) = {}, n = {n_deg}", place.vu));
                    shape_ok = false;
                    continue;
                }
                let expected_e = n_deg / n_deg.gcd(&place.vu);
                if place.e != expected_e || &place.phi * n_deg != &place.e * &place.vu {
                    c.push(
                        Rule::KummerDataInconsistent,
                        Some(i),
                        format!("e = {}, Φ = {}, v(u) = {}", place.e, place.phi, place.vu),
                    );
                    shape_ok = false;
                }
            }
            if shape_ok && !places.is_empty() {
                let total: BigInt = places.iter().map(|pl| &pl.vu).sum();
                if !total.mod_floor(n_deg).is_zero() {
                    c.push(Rule::PrincipalDivisorDegree, None, format!("sum v(u) = {total}, n = {n_deg}"));
                }
                let common = places.iter().fold(n_deg.clone(), |acc, pl| acc.gcd(&pl.vu));
                if g_base.is_zero() && !common.is_one() {
                    c.push(Rule::ImprimitiveKummerGenerator, None, format!("gcd(n, v(u)) = {common}"));
                }
            }
        }
    }

    let genus = if c.violations.is_empty() { boseck::genus(spec).ok() } else { None };
    if let Some(g) = &genus {
        if g < &BigInt::from(2) {
            c.push(Rule::GenusTooSmall, None, format!("g_F = {g}"));
        }
    }
    ValidationReport { violations: c.violations, genus, strict }
}

fn check_group(c: &mut Collector, group: &GroupParams) {
    if !is_prime(group.p()) {
        c.push(Rule::CharacteristicNotPrime, None, format!("p = {}", group.p()));
    }
    if group.n() == 0 {
        c.push(Rule::TowerHeightZero, None, "n = 0");
    }
}

fn check_base_genus(c: &mut Collector, g_base: &BigInt) {
    if g_base.is_negative() {
        c.push(Rule::NegativeBaseGenus, None, format!("g_base = {g_base}"));
    }
}

fn check_cyclic_place(c: &mut Collector, i: usize, place: &CyclicPlace, group: &GroupParams, strict: bool) {
    let n = group.n();
    let p = group.p();
    if place.e == 0 || place.e > n {
        c.push(Rule::RamificationExponentRange, Some(i), format!("e = {}, n = {n}", place.e));
        return;
    }
    if place.phi.len() != n as usize {
        c.push(Rule::JumpVectorLength, Some(i), format!("{} jumps for n = {n}", place.phi.len()));
        return;
    }
    let first_ramified = (n - place.e) as usize;
    for (j, phi) in place.phi.iter().enumerate() {
        if j < first_ramified {
            if !phi.is_zero() {
                c.push(Rule::UnramifiedLevelJump, Some(i), format!("Φ({}) = {phi}", j + 1));
            }
        } else if !phi.is_positive() || !phi.gcd(p).is_one() {
            c.push(Rule::JumpNotStandard, Some(i), format!("Φ({}) = {phi}", j + 1));
        }
    }
    if strict {
        for j in first_ramified..(n as usize).saturating_sub(1) {
            let bound = p * &place.phi[j];
            if place.phi[j + 1] < bound {
                c.push(
                    Rule::JumpGrowth,
                    Some(i),
                    format!("Φ({}) = {} < p * Φ({}) = {bound}", j + 2, place.phi[j + 1], j + 1),
                );
            }
        }
    }
}
