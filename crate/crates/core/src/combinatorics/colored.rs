use std::fmt;

use crate::error::{Error, Result};

use super::word::{ClassId, SpinWord};

/// One site of a colored chain: a direction and a color in `[0, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredStep {
    pub up: bool,
    pub color: u8,
}

impl ColoredStep {
    pub fn up(color: u8) -> Self {
        ColoredStep { up: true, color }
    }

    pub fn down(color: u8) -> Self {
        ColoredStep { up: false, color }
    }

    /// Local basis index: direction-major, `up * k + color`.
    pub fn digit(&self, n_colors: usize) -> usize {
        self.up as usize * n_colors + self.color as usize
    }

    pub fn from_digit(digit: usize, n_colors: usize) -> Self {
        ColoredStep {
            up: digit >= n_colors,
            color: (digit % n_colors) as u8,
        }
    }
}

/// Basis state of the colored chain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredSpinWord {
    n_colors: usize,
    steps: Vec<ColoredStep>,
}

impl ColoredSpinWord {
    pub fn new(n_colors: usize, steps: Vec<ColoredStep>) -> Result<Self> {
        if n_colors == 0 {
            return Err(Error::InvalidArgument("number of colors must be at least 1".into()));
        }
        if let Some(bad) = steps.iter().find(|s| s.color as usize >= n_colors) {
            return Err(Error::InvalidArgument(format!(
                "color {} out of range for k={n_colors}",
                bad.color
            )));
        }
        Ok(ColoredSpinWord { n_colors, steps })
    }

    /// Decodes a basis index (site 0 is the most significant base-`2k` digit).
    pub fn from_index(index: usize, n_sites: usize, n_colors: usize) -> Self {
        let d = 2 * n_colors;
        let mut steps = vec![ColoredStep::down(0); n_sites];
        let mut rest = index;
        for s in (0..n_sites).rev() {
            steps[s] = ColoredStep::from_digit(rest % d, n_colors);
            rest /= d;
        }
        ColoredSpinWord { n_colors, steps }
    }

    /// Colors `word` uniformly with `color`.
    pub fn monochrome(word: &SpinWord, n_colors: usize, color: u8) -> Result<Self> {
        let steps = word.steps().map(|up| ColoredStep { up, color }).collect();
        ColoredSpinWord::new(n_colors, steps)
    }

    pub fn index(&self) -> usize {
        let d = 2 * self.n_colors;
        self.steps
            .iter()
            .fold(0usize, |acc, s| acc * d + s.digit(self.n_colors))
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn n_sites(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[ColoredStep] {
        &self.steps
    }

    pub fn uncolored(&self) -> SpinWord {
        let ups: Vec<bool> = self.steps.iter().map(|s| s.up).collect();
        SpinWord::from_ups(&ups)
    }

    /// Parses the token format `(0)0(1)1`.
    pub fn parse(s: &str, n_colors: usize) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if !chars.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("colored word {s:?} has odd token length")));
        }
        let steps = chars
            .chunks(2)
            .map(|tok| {
                let up = match tok[0] {
                    '(' => true,
                    ')' => false,
                    c => return Err(Error::Parse(format!("unexpected direction {c:?} in {s:?}"))),
                };
                let color = tok[1]
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("unexpected color {:?} in {s:?}", tok[1])))?;
                Ok(ColoredStep { up, color: color as u8 })
            })
            .collect::<Result<Vec<_>>>()?;
        ColoredSpinWord::new(n_colors, steps)
    }
}

impl fmt::Display for ColoredSpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}{}", if s.up { '(' } else { ')' }, s.color)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColoredSpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredSpinWord(k={}, \"{self}\")", self.n_colors)
    }
}

/// Colored class label: unmatched step colors in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredClassId {
    pub colors_a: Vec<u8>,
    pub colors_b: Vec<u8>,
}

impl ColoredClassId {
    pub fn a(&self) -> usize {
        self.colors_a.len()
    }

    pub fn b(&self) -> usize {
        self.colors_b.len()
    }

    pub fn uncolored(&self) -> ClassId {
        ClassId::new(self.a(), self.b())
    }
}

pub fn classify_colored(w: &ColoredSpinWord) -> ColoredClassId {
    let mut open: Vec<u8> = Vec::new();
    let mut colors_a = Vec::new();
    for s in w.steps() {
        if s.up {
            open.push(s.color);
        } else if open.pop().is_none() {
            colors_a.push(s.color);
        }
    }
    ColoredClassId {
        colors_a,
        colors_b: open,
    }
}

/// Dyck as an uncolored word, with every matched pair sharing one color.
pub fn is_properly_colored(w: &ColoredSpinWord) -> bool {
    let mut open: Vec<u8> = Vec::new();
    for s in w.steps() {
        if s.up {
            open.push(s.color);
        } else {
            match open.pop() {
                Some(c) if c == s.color => {}
                _ => return false,
            }
        }
    }
    open.is_empty()
}

/// Colored move on a window holding `(x, y, z)`: returns the rewritten triple.
///
/// `↑c1 ↑c2 ↓c3 ↔ ↑c2 ↓c3 ↑c1` and `↓c1 ↑c2 ↓c3 ↔ ↑c2 ↓c3 ↓c1`: the adjacent
/// pair keeps its two colors and the bystander step keeps its own.
pub(crate) fn colored_move(window: [ColoredStep; 3]) -> Option<[ColoredStep; 3]> {
    let [x, y, z] = window;
    match (x.up, y.up, z.up) {
        // "(()" or ")()": pair at (y, z) moves left of bystander x
        (true, true, false) | (false, true, false) => Some([y, z, x]),
        // "()(" or "())": pair at (x, y) moves right of bystander z
        (true, false, true) | (true, false, false) => Some([z, x, y]),
        _ => None,
    }
}

pub fn colored_fredkin_neighbors(w: &ColoredSpinWord) -> Vec<ColoredSpinWord> {
    colored_fredkin_neighbors_with(w, false)
}

/// Distinct colored neighbors, ascending by encoding; windows wrap when
/// `periodic`.
pub fn colored_fredkin_neighbors_with(w: &ColoredSpinWord, periodic: bool) -> Vec<ColoredSpinWord> {
    let n = w.n_sites();
    let mut out = Vec::new();
    for sites in super::word::windows(n, periodic) {
        let window = sites.map(|s| w.steps[s]);
        if let Some(moved) = colored_move(window) {
            let mut steps = w.steps.clone();
            for (t, &s) in sites.iter().enumerate() {
                steps[s] = moved[t];
            }
            out.push(ColoredSpinWord {
                n_colors: w.n_colors,
                steps,
            });
        }
    }
    out.sort_by_key(|x| x.index());
    out.dedup();
    out
}
