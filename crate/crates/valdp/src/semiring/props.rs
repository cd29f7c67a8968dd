//! Property checkers for semirings.
//!
//! Finite carriers are scanned exhaustively; infinite ones are sampled
//! under a seeded budget, so a clean scan yields `NotFalsified` rather
//! than `Holds`. A failing verdict always carries a witness whose
//! elements violate the property when re-evaluated
//! ([`witness_violates`]).
//!
//! Scan order is part of the contract: axiom, selectivity, and
//! monotonicity scans ascend the carrier; the cancellativity and
//! square-order scans descend it, and cancellativity witnesses are
//! normalized so the smaller element comes first (their premise is
//! symmetric in `a` and `b`). The witness for a given semiring is
//! therefore reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Semiring, SemiringError, Value};

/// Sampling budget and seed for checks on infinite carriers.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Samples drawn per property when the carrier is infinite.
    pub budget: u64,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyName {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    Distributive,
    ZeroAnnihilates,
    Selective,
    Idempotent,
    TotallyOrdered,
    SquareMultCancellativeOnImage,
    SquareOrdered,
    WeaklyMultCancellative,
    MultCancellative,
    StrictMonotonic,
}

impl PropertyName {
    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyName::AddAssociative => "add-associative",
            PropertyName::AddCommutative => "add-commutative",
            PropertyName::AddIdentity => "add-identity",
            PropertyName::MulAssociative => "mul-associative",
            PropertyName::MulCommutative => "mul-commutative",
            PropertyName::MulIdentity => "mul-identity",
            PropertyName::Distributive => "distributive",
            PropertyName::ZeroAnnihilates => "zero-annihilates",
            PropertyName::Selective => "selective",
            PropertyName::Idempotent => "idempotent",
            PropertyName::TotallyOrdered => "totally-ordered",
            PropertyName::SquareMultCancellativeOnImage => "square-mult-cancellative-on-image",
            PropertyName::SquareOrdered => "square-ordered",
            PropertyName::WeaklyMultCancellative => "weakly-mult-cancellative",
            PropertyName::MultCancellative => "mult-cancellative",
            PropertyName::StrictMonotonic => "strict-monotonic",
        }
    }
}

impl std::fmt::Display for PropertyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Concrete elements violating a property, tagged with their role names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub parts: Vec<(&'static str, Value)>,
}

impl Witness {
    fn new(parts: Vec<(&'static str, Value)>) -> Self {
        Witness { parts }
    }

    pub fn elements(&self) -> Vec<Value> {
        self.parts.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn format(&self, s: &Semiring) -> String {
        self.parts
            .iter()
            .map(|(role, v)| format!("{role}={}", s.format_value(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Established by exhaustive enumeration.
    Holds,
    /// No violation in the sampled budget; not a proof.
    NotFalsified,
    Fails(Witness),
}

impl Verdict {
    pub fn passes(&self) -> bool {
        !matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub property: PropertyName,
    pub verdict: Verdict,
}

/// Outcome of one or more property checks on a semiring.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
    /// Candidate tuples examined across all checks.
    pub budget_used: u64,
    /// True when every check enumerated the whole carrier.
    pub exhaustive: bool,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.verdict, Verdict::Holds))
    }

    /// True when no check failed (sampled non-falsification counts).
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passes())
    }

    pub fn verdict(&self, property: PropertyName) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.property == property)
            .map(|c| &c.verdict)
    }

    pub fn first_failure(&self) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| !c.verdict.passes())
    }

    fn single(
        property: PropertyName,
        verdict: Verdict,
        budget_used: u64,
        exhaustive: bool,
    ) -> Self {
        PropertyReport {
            checks: vec![PropertyCheck { property, verdict }],
            budget_used,
            exhaustive,
        }
    }

    /// One line per check, e.g. `square-ordered: fails witness a=3 b=2`.
    pub fn format(&self, s: &Semiring) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let line = match &check.verdict {
                Verdict::Holds => format!("{}: holds", check.property),
                Verdict::NotFalsified => {
                    format!(
                        "{}: not falsified (budget {})",
                        check.property, self.budget_used
                    )
                }
                Verdict::Fails(w) => format!("{}: fails witness {}", check.property, w.format(s)),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Scan driver
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum Dir {
    Asc,
    Desc,
}

struct Scan<'a> {
    semiring: &'a Semiring,
    /// Carrier in scan order when finite, else None.
    base: Option<Vec<Value>>,
    rng: ChaCha8Rng,
    budget: u64,
    used: u64,
}

impl<'a> Scan<'a> {
    fn new(
        semiring: &'a Semiring,
        base: Option<Vec<Value>>,
        dir: Dir,
        opts: &CheckOptions,
        tag: u64,
    ) -> Self {
        let base = base.or_else(|| semiring.carrier()).map(|mut c| {
            if matches!(dir, Dir::Desc) {
                c.reverse();
            }
            c
        });
        Scan {
            semiring,
            base,
            rng: ChaCha8Rng::seed_from_u64(
                opts.seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add(tag),
            ),
            budget: opts.budget,
            used: 0,
        }
    }

    fn exhaustive(&self) -> bool {
        self.base.is_some()
    }

    /// Runs `violation` over all k-tuples (finite) or `budget` sampled
    /// ones, returning the first witness.
    fn run<const K: usize>(
        &mut self,
        mut violation: impl FnMut(&Semiring, &[Value; K]) -> Result<Option<Witness>, SemiringError>,
    ) -> Result<Verdict, SemiringError> {
        if let Some(base) = self.base.clone() {
            let mut idx = [0usize; K];
            loop {
                let tuple: [Value; K] = std::array::from_fn(|i| base[idx[i]].clone());
                self.used += 1;
                if let Some(w) = violation(self.semiring, &tuple)? {
                    return Ok(Verdict::Fails(w));
                }
                let mut pos = K;
                loop {
                    if pos == 0 {
                        return Ok(Verdict::Holds);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < base.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        } else {
            for _ in 0..self.budget {
                let tuple: [Value; K] =
                    std::array::from_fn(|_| self.semiring.sample(&mut self.rng));
                self.used += 1;
                if let Some(w) = violation(self.semiring, &tuple)? {
                    return Ok(Verdict::Fails(w));
                }
            }
            Ok(Verdict::NotFalsified)
        }
    }
}

fn not_eq(s: &Semiring, a: &Value, b: &Value) -> bool {
    !s.values_eq(a, b)
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

/// Checks the commutative-semiring axioms: both operations associative
/// and commutative, `zero`/`one` neutral, `mul` distributes over `add`,
/// `zero` annihilates. Table semirings are validated (closure, shape)
/// first.
pub fn check_semiring_axioms(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    if let Some(data) = s.table_data() {
        data.validate()?;
    }
    let mut checks = Vec::new();
    let mut used = 0u64;
    let mut exhaustive = true;

    let push = |name: PropertyName,
                verdict: Verdict,
                scan_used: u64,
                scan_exh: bool,
                used: &mut u64,
                exhaustive: &mut bool,
                checks: &mut Vec<PropertyCheck>| {
        *used += scan_used;
        *exhaustive &= scan_exh;
        checks.push(PropertyCheck {
            property: name,
            verdict,
        });
    };

    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 1);
        let v = scan.run::<2>(|s, [a, b]| {
            if not_eq(s, &s.add(a, b)?, &s.add(b, a)?) {
                Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::AddCommutative,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 2);
        let v = scan.run::<3>(|s, [a, b, c]| {
            if not_eq(s, &s.add(&s.add(a, b)?, c)?, &s.add(a, &s.add(b, c)?)?) {
                Ok(Some(Witness::new(vec![
                    ("a", a.clone()),
                    ("b", b.clone()),
                    ("c", c.clone()),
                ])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::AddAssociative,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 3);
        let zero = s.zero();
        let v = scan.run::<1>(|s, [a]| {
            if not_eq(s, &s.add(&zero, a)?, a) || not_eq(s, &s.add(a, &zero)?, a) {
                Ok(Some(Witness::new(vec![("a", a.clone())])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::AddIdentity,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 4);
        let v = scan.run::<2>(|s, [a, b]| {
            if not_eq(s, &s.mul(a, b)?, &s.mul(b, a)?) {
                Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::MulCommutative,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 5);
        let v = scan.run::<3>(|s, [a, b, c]| {
            if not_eq(s, &s.mul(&s.mul(a, b)?, c)?, &s.mul(a, &s.mul(b, c)?)?) {
                Ok(Some(Witness::new(vec![
                    ("a", a.clone()),
                    ("b", b.clone()),
                    ("c", c.clone()),
                ])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::MulAssociative,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 6);
        let one = s.one();
        let v = scan.run::<1>(|s, [a]| {
            if not_eq(s, &s.mul(&one, a)?, a) || not_eq(s, &s.mul(a, &one)?, a) {
                Ok(Some(Witness::new(vec![("a", a.clone())])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::MulIdentity,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 7);
        let v = scan.run::<3>(|s, [a, b, c]| {
            let left = not_eq(
                s,
                &s.mul(a, &s.add(b, c)?)?,
                &s.add(&s.mul(a, b)?, &s.mul(a, c)?)?,
            );
            let right = not_eq(
                s,
                &s.mul(&s.add(b, c)?, a)?,
                &s.add(&s.mul(b, a)?, &s.mul(c, a)?)?,
            );
            if left || right {
                Ok(Some(Witness::new(vec![
                    ("a", a.clone()),
                    ("b", b.clone()),
                    ("c", c.clone()),
                ])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::Distributive,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }
    {
        let mut scan = Scan::new(s, None, Dir::Asc, opts, 8);
        let zero = s.zero();
        let v = scan.run::<1>(|s, [a]| {
            if not_eq(s, &s.mul(&zero, a)?, &zero) || not_eq(s, &s.mul(a, &zero)?, &zero) {
                Ok(Some(Witness::new(vec![("a", a.clone())])))
            } else {
                Ok(None)
            }
        })?;
        push(
            PropertyName::ZeroAnnihilates,
            v,
            scan.used,
            scan.exhaustive(),
            &mut used,
            &mut exhaustive,
            &mut checks,
        );
    }

    Ok(PropertyReport {
        checks,
        budget_used: used,
        exhaustive,
    })
}

// ---------------------------------------------------------------------------
// Individual properties
// ---------------------------------------------------------------------------

/// `a + b` is always one of `a`, `b`.
pub fn check_selective(s: &Semiring, opts: &CheckOptions) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Asc, opts, 10);
    let v = scan.run::<2>(|s, [a, b]| {
        let sum = s.add(a, b)?;
        if not_eq(s, &sum, a) && not_eq(s, &sum, b) {
            Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::Selective,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// `a + a = a`.
pub fn check_idempotent(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Asc, opts, 11);
    let v = scan.run::<1>(|s, [a]| {
        if not_eq(s, &s.add(a, a)?, a) {
            Ok(Some(Witness::new(vec![("a", a.clone())])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::Idempotent,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// Total comparability in the difference order: for all `a`, `b` there is
/// a `c` with `a + c = b` or `b + c = a`. Exhaustive only on finite
/// carriers; on infinite ones a missing `c` among the sampled candidates
/// does not falsify the existential, so the verdict stays
/// `NotFalsified`.
pub fn check_totally_ordered(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let carrier = s.carrier();
    let mut scan = Scan::new(s, None, Dir::Asc, opts, 12);
    let v = scan.run::<2>(|s, [a, b]| {
        match &carrier {
            Some(all) => {
                for c in all {
                    if s.values_eq(&s.add(a, c)?, b) || s.values_eq(&s.add(b, c)?, a) {
                        return Ok(None);
                    }
                }
                Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
            }
            None => {
                // Candidates cover the selective case (c in {a, b}).
                let _ = s.values_eq(&s.add(a, b)?, b) || s.values_eq(&s.add(b, a)?, a);
                Ok(None)
            }
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::TotallyOrdered,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// For `a`, `b` in the image of `mul` with `a != 0`: `a.a = b.a` implies
/// `a = b`. Scans descend, so the witness names the largest violating
/// pair.
pub fn check_square_mult_cancellative_on_image(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let base = s.mul_image();
    let mut scan = Scan::new(s, base, Dir::Desc, opts, 13);
    let exhaustive = scan.exhaustive();
    let v = if exhaustive {
        scan.run::<2>(|s, [a, b]| square_cancel_violation(s, a, b))?
    } else {
        // Sampled image elements: products of sampled pairs.
        scan.run::<4>(|s, [x, y, u, w]| {
            let a = s.mul(x, y)?;
            let b = s.mul(u, w)?;
            square_cancel_violation(s, &a, &b)
        })?
    };
    Ok(PropertyReport::single(
        PropertyName::SquareMultCancellativeOnImage,
        v,
        scan.used,
        exhaustive,
    ))
}

fn square_cancel_violation(
    s: &Semiring,
    a: &Value,
    b: &Value,
) -> Result<Option<Witness>, SemiringError> {
    if s.is_zero(a) {
        return Ok(None);
    }
    if s.values_eq(&s.mul(a, a)?, &s.mul(b, a)?) && not_eq(s, a, b) {
        Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
    } else {
        Ok(None)
    }
}

/// `a.a = b.a` implies `b.b >= a.a` in the canonical order. Scans
/// descend.
pub fn check_square_ordered(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Desc, opts, 14);
    let v = scan.run::<2>(|s, [a, b]| {
        let aa = s.mul(a, a)?;
        if s.values_eq(&aa, &s.mul(b, a)?) && !s.leq(&aa, &s.mul(b, b)?)? {
            Ok(Some(Witness::new(vec![("a", a.clone()), ("b", b.clone())])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::SquareOrdered,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// `a.c = b.c != 0` implies `a = b`. Scans descend; the witness pair is
/// reported with the smaller element first.
pub fn check_weakly_mult_cancellative(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Desc, opts, 15);
    let v = scan.run::<3>(|s, [a, b, c]| {
        let ac = s.mul(a, c)?;
        if !s.is_zero(&ac) && s.values_eq(&ac, &s.mul(b, c)?) && not_eq(s, a, b) {
            let (lo, hi) = ordered_pair(s, a, b)?;
            Ok(Some(Witness::new(vec![
                ("a", lo),
                ("b", hi),
                ("c", c.clone()),
            ])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::WeaklyMultCancellative,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// `c != 0` and `a.c = b.c` imply `a = b`. Scans descend; witness pair
/// normalized like the weak variant.
pub fn check_mult_cancellative(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Desc, opts, 16);
    let v = scan.run::<3>(|s, [a, b, c]| {
        if !s.is_zero(c) && s.values_eq(&s.mul(a, c)?, &s.mul(b, c)?) && not_eq(s, a, b) {
            let (lo, hi) = ordered_pair(s, a, b)?;
            Ok(Some(Witness::new(vec![
                ("a", lo),
                ("b", hi),
                ("c", c.clone()),
            ])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::MultCancellative,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

/// `a < b` and `c != 0` imply `a.c < b.c` (canonical order, strictly).
pub fn check_strict_monotonic(
    s: &Semiring,
    opts: &CheckOptions,
) -> Result<PropertyReport, SemiringError> {
    let mut scan = Scan::new(s, None, Dir::Asc, opts, 17);
    let v = scan.run::<3>(|s, [a, b, c]| {
        if s.is_zero(c) || !s.leq(a, b)? || s.values_eq(a, b) {
            return Ok(None);
        }
        let ac = s.mul(a, c)?;
        let bc = s.mul(b, c)?;
        if !s.leq(&ac, &bc)? || s.values_eq(&ac, &bc) {
            Ok(Some(Witness::new(vec![
                ("a", a.clone()),
                ("b", b.clone()),
                ("c", c.clone()),
            ])))
        } else {
            Ok(None)
        }
    })?;
    Ok(PropertyReport::single(
        PropertyName::StrictMonotonic,
        v,
        scan.used,
        scan.exhaustive(),
    ))
}

fn ordered_pair(s: &Semiring, a: &Value, b: &Value) -> Result<(Value, Value), SemiringError> {
    if s.leq(a, b)? {
        Ok((a.clone(), b.clone()))
    } else {
        Ok((b.clone(), a.clone()))
    }
}

// ---------------------------------------------------------------------------
// Witness re-evaluation
// ---------------------------------------------------------------------------

/// Re-evaluates a witness against the property it claims to violate.
/// Returns true when the elements indeed violate it.
pub fn witness_violates(
    s: &Semiring,
    property: PropertyName,
    w: &Witness,
) -> Result<bool, SemiringError> {
    let e = w.elements();
    let get = |i: usize| -> &Value { &e[i] };
    Ok(match property {
        PropertyName::AddCommutative => not_eq(s, &s.add(get(0), get(1))?, &s.add(get(1), get(0))?),
        PropertyName::AddAssociative => not_eq(
            s,
            &s.add(&s.add(get(0), get(1))?, get(2))?,
            &s.add(get(0), &s.add(get(1), get(2))?)?,
        ),
        PropertyName::AddIdentity => {
            let zero = s.zero();
            not_eq(s, &s.add(&zero, get(0))?, get(0)) || not_eq(s, &s.add(get(0), &zero)?, get(0))
        }
        PropertyName::MulCommutative => not_eq(s, &s.mul(get(0), get(1))?, &s.mul(get(1), get(0))?),
        PropertyName::MulAssociative => not_eq(
            s,
            &s.mul(&s.mul(get(0), get(1))?, get(2))?,
            &s.mul(get(0), &s.mul(get(1), get(2))?)?,
        ),
        PropertyName::MulIdentity => {
            let one = s.one();
            not_eq(s, &s.mul(&one, get(0))?, get(0)) || not_eq(s, &s.mul(get(0), &one)?, get(0))
        }
        PropertyName::Distributive => {
            let (a, b, c) = (get(0), get(1), get(2));
            not_eq(
                s,
                &s.mul(a, &s.add(b, c)?)?,
                &s.add(&s.mul(a, b)?, &s.mul(a, c)?)?,
            ) || not_eq(
                s,
                &s.mul(&s.add(b, c)?, a)?,
                &s.add(&s.mul(b, a)?, &s.mul(c, a)?)?,
            )
        }
        PropertyName::ZeroAnnihilates => {
            let zero = s.zero();
            not_eq(s, &s.mul(&zero, get(0))?, &zero) || not_eq(s, &s.mul(get(0), &zero)?, &zero)
        }
        PropertyName::Selective => {
            let sum = s.add(get(0), get(1))?;
            not_eq(s, &sum, get(0)) && not_eq(s, &sum, get(1))
        }
        PropertyName::Idempotent => not_eq(s, &s.add(get(0), get(0))?, get(0)),
        PropertyName::TotallyOrdered => match s.carrier() {
            Some(all) => {
                let mut comparable = false;
                for c in &all {
                    if s.values_eq(&s.add(get(0), c)?, get(1))
                        || s.values_eq(&s.add(get(1), c)?, get(0))
                    {
                        comparable = true;
                        break;
                    }
                }
                !comparable
            }
            None => false,
        },
        PropertyName::SquareMultCancellativeOnImage => {
            square_cancel_violation(s, get(0), get(1))?.is_some()
        }
        PropertyName::SquareOrdered => {
            let aa = s.mul(get(0), get(0))?;
            s.values_eq(&aa, &s.mul(get(1), get(0))?) && !s.leq(&aa, &s.mul(get(1), get(1))?)?
        }
        PropertyName::WeaklyMultCancellative => {
            let ac = s.mul(get(0), get(2))?;
            !s.is_zero(&ac)
                && s.values_eq(&ac, &s.mul(get(1), get(2))?)
                && not_eq(s, get(0), get(1))
        }
        PropertyName::MultCancellative => {
            !s.is_zero(get(2))
                && s.values_eq(&s.mul(get(0), get(2))?, &s.mul(get(1), get(2))?)
                && not_eq(s, get(0), get(1))
        }
        PropertyName::StrictMonotonic => {
            let (a, b, c) = (get(0), get(1), get(2));
            if s.is_zero(c) || !s.leq(a, b)? || s.values_eq(a, b) {
                false
            } else {
                let ac = s.mul(a, c)?;
                let bc = s.mul(b, c)?;
                !s.leq(&ac, &bc)? || s.values_eq(&ac, &bc)
            }
        }
    })
}
