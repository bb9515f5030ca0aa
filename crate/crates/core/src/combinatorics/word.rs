use std::fmt;
use std::str::FromStr;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

use super::count::class_size;

/// Maximum number of sites a packed [`SpinWord`] can hold.
pub const MAX_SITES: usize = 64;

/// A product basis state of the spin-½ chain, read as a word over `(` (up) and
/// `)` (down).
///
/// Sites are 0-indexed from the left. The packed encoding puts site 0 in the
/// most significant of the `n_sites` low bits and stores up as 1, so integer
/// order equals lexicographic order with `)` < `(`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinWord {
    n_sites: usize,
    bits: u64,
}

impl SpinWord {
    pub fn new(n_sites: usize, bits: u64) -> Self {
        assert!(n_sites <= MAX_SITES, "at most {MAX_SITES} sites");
        let mask = low_mask(n_sites);
        assert!(bits & !mask == 0, "bits {bits:#x} exceed {n_sites} sites");
        SpinWord { n_sites, bits }
    }

    pub fn from_ups(ups: &[bool]) -> Self {
        let bits = ups.iter().fold(0u64, |acc, &u| (acc << 1) | u as u64);
        SpinWord::new(ups.len(), bits)
    }

    pub fn empty() -> Self {
        SpinWord { n_sites: 0, bits: 0 }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn len(&self) -> usize {
        self.n_sites
    }

    pub fn is_empty(&self) -> bool {
        self.n_sites == 0
    }

    /// Canonical integer encoding in `[0, 2^n_sites)`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn is_up(&self, site: usize) -> bool {
        debug_assert!(site < self.n_sites);
        (self.bits >> (self.n_sites - 1 - site)) & 1 == 1
    }

    pub fn steps(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n_sites).map(move |s| self.is_up(s))
    }

    pub fn with_site(&self, site: usize, up: bool) -> Self {
        let shift = self.n_sites - 1 - site;
        let bits = (self.bits & !(1 << shift)) | ((up as u64) << shift);
        SpinWord {
            n_sites: self.n_sites,
            bits,
        }
    }

    pub fn up_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Total magnetization `Σ σ^z` (ups minus downs).
    pub fn magnetization(&self) -> i64 {
        2 * self.up_count() as i64 - self.n_sites as i64
    }
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for SpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for up in self.steps() {
            f.write_str(if up { "(" } else { ")" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinWord(\"{self}\")")
    }
}

impl FromStr for SpinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ups = s
            .chars()
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::Parse(format!("unexpected character {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if ups.len() > MAX_SITES {
            return Err(Error::Parse(format!("word longer than {MAX_SITES} sites")));
        }
        Ok(SpinWord::from_ups(&ups))
    }
}

/// Parenthesis matching of a word: `partner[i]` is the site matched with `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn partner(&self, site: usize) -> Option<usize> {
        self.partner[site]
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Matched pairs `(open, close)` ordered by opening site.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.filter(|&j| j > i).map(|j| (i, j)))
            .collect()
    }

    pub fn unmatched(&self) -> impl Iterator<Item = usize> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| i)
    }
}

/// Label of a Fredkin equivalence class: `a` unmatched downs, `b` unmatched ups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub a: usize,
    pub b: usize,
}

impl ClassId {
    pub const DYCK: ClassId = ClassId { a: 0, b: 0 };

    pub fn new(a: usize, b: usize) -> Self {
        ClassId { a, b }
    }

    /// Whether `C_{a,b}(n_sites)` has any member.
    pub fn is_nonempty(&self, n_sites: usize) -> bool {
        let ab = self.a + self.b;
        ab <= n_sites && (n_sites - ab).is_multiple_of(2)
    }
}

/// Stack matching; unmatched downs necessarily precede unmatched ups.
pub fn match_parens(w: &SpinWord) -> Matching {
    let mut partner = vec![None; w.n_sites()];
    let mut open = Vec::new();
    for (i, up) in w.steps().enumerate() {
        if up {
            open.push(i);
        } else if let Some(j) = open.pop() {
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
    }
    Matching { partner }
}

pub fn classify(w: &SpinWord) -> ClassId {
    classify_bits(w.bits(), w.n_sites())
}

pub(crate) fn classify_bits(bits: u64, n_sites: usize) -> ClassId {
    let mut open = 0usize;
    let mut a = 0usize;
    for s in (0..n_sites).rev() {
        if (bits >> s) & 1 == 1 {
            open += 1;
        } else if open > 0 {
            open -= 1;
        } else {
            a += 1;
        }
    }
    ClassId { a, b: open }
}

pub fn is_dyck(w: &SpinWord) -> bool {
    classify(w) == ClassId::DYCK
}

/// `k` copies of `()`, then `a` downs, then `b` ups.
pub fn standard_form(class: ClassId, n_sites: usize) -> Result<SpinWord> {
    if !class.is_nonempty(n_sites) || n_sites > MAX_SITES {
        return Err(Error::EmptyClass {
            a: class.a,
            b: class.b,
            n_sites,
        });
    }
    let pairs = (n_sites - class.a - class.b) / 2;
    let mut ups = Vec::with_capacity(n_sites);
    for _ in 0..pairs {
        ups.extend([true, false]);
    }
    ups.extend(std::iter::repeat_n(false, class.a));
    ups.extend(std::iter::repeat_n(true, class.b));
    Ok(SpinWord::from_ups(&ups))
}

/// All members of `C_{a,b}(n_sites)` in ascending encoding order.
///
/// Filters the full `2^n_sites` basis; this is the reference the closed-form
/// counts are tested against.
pub fn enumerate_class(class: ClassId, n_sites: usize) -> Result<Vec<SpinWord>> {
    enumerate_class_with(class, n_sites, Caps::global(), Execution::default())
}

pub fn enumerate_class_with(class: ClassId, n_sites: usize, caps: &Caps, exec: Execution) -> Result<Vec<SpinWord>> {
    if n_sites > caps.enumeration_bits as usize || n_sites >= MAX_SITES {
        return Err(Error::CapExceeded {
            required_bits: n_sites as u32,
            cap_bits: caps.enumeration_bits,
        });
    }
    if !class.is_nonempty(n_sites) {
        return Ok(Vec::new());
    }
    let words = exec::filter_range(exec, 1u64 << n_sites, |bits| classify_bits(bits, n_sites) == class);
    debug_assert_eq!(words.len() as u128, class_size(class, n_sites));
    Ok(words.into_iter().map(|bits| SpinWord { n_sites, bits }).collect())
}

/// Turns every unmatched down into an up, giving a member of `C_{0,a+b}`.
pub fn flip_bijection(w: &SpinWord) -> SpinWord {
    let matching = match_parens(w);
    matching
        .unmatched()
        .filter(|&s| !w.is_up(s))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(*w, |acc, s| acc.with_site(s, true))
}

/// Inverse of [`flip_bijection`] for a target class with `a` unmatched downs:
/// the first `a` unmatched ups of a `C_{0,a+b}` word turn back into downs.
pub fn unflip_bijection(w: &SpinWord, a: usize) -> SpinWord {
    let matching = match_parens(w);
    let unmatched: Vec<usize> = matching.unmatched().collect();
    unmatched.iter().take(a).fold(*w, |acc, &s| acc.with_site(s, false))
}

// 3-bit window patterns, first site most significant.
const OPEN_OPEN_CLOSE: u64 = 0b110; // "(()"
const OPEN_CLOSE_OPEN: u64 = 0b101; // "()("
const OPEN_CLOSE_CLOSE: u64 = 0b100; // "())"
const CLOSE_OPEN_CLOSE: u64 = 0b010; // ")()"

/// Partner pattern of a 3-site window under a Fredkin move.
#[inline]
pub(crate) fn move_partner(pattern: u64) -> Option<u64> {
    match pattern {
        OPEN_OPEN_CLOSE => Some(OPEN_CLOSE_OPEN),
        OPEN_CLOSE_OPEN => Some(OPEN_OPEN_CLOSE),
        OPEN_CLOSE_CLOSE => Some(CLOSE_OPEN_CLOSE),
        CLOSE_OPEN_CLOSE => Some(OPEN_CLOSE_CLOSE),
        _ => None,
    }
}

/// Site triples of every move window; wrapping ones only when `periodic`.
pub fn windows(n_sites: usize, periodic: bool) -> Vec<[usize; 3]> {
    if periodic {
        if n_sites < 3 {
            return Vec::new();
        }
        (0..n_sites)
            .map(|j| [j, (j + 1) % n_sites, (j + 2) % n_sites])
            .collect()
    } else {
        (0..n_sites.saturating_sub(2)).map(|j| [j, j + 1, j + 2]).collect()
    }
}

/// Calls `f` with the encoding of every one-move neighbor (possibly repeated).
#[inline]
pub(crate) fn for_each_move(bits: u64, n_sites: usize, periodic: bool, mut f: impl FnMut(u64)) {
    let n_windows = if periodic {
        if n_sites < 3 {
            0
        } else {
            n_sites
        }
    } else {
        n_sites.saturating_sub(2)
    };
    let shift = |site: usize| n_sites - 1 - site;
    for j in 0..n_windows {
        let sites = [j, (j + 1) % n_sites, (j + 2) % n_sites];
        let pattern = sites.iter().fold(0u64, |acc, &s| (acc << 1) | ((bits >> shift(s)) & 1));
        if let Some(target) = move_partner(pattern) {
            let mut next = bits;
            for (t, &s) in sites.iter().enumerate() {
                let bit = (target >> (2 - t)) & 1;
                next = (next & !(1 << shift(s))) | (bit << shift(s));
            }
            f(next);
        }
    }
}

/// Distinct words one Fredkin move away, ascending.
pub fn fredkin_neighbors(w: &SpinWord, periodic: bool) -> Vec<SpinWord> {
    let mut out = Vec::new();
    for_each_move(w.bits(), w.n_sites(), periodic, |bits| out.push(bits));
    out.sort_unstable();
    out.dedup();
    out.into_iter()
        .map(|bits| SpinWord {
            n_sites: w.n_sites(),
            bits,
        })
        .collect()
}
