//! Dyck words, Fredkin moves, and the counting of Fredkin equivalence classes.
//!
//! A word of length `N` over `(`/`)` is the same thing as a basis state of the
//! spin-½ chain (`(` = up) or a lattice path with up/down steps. Fredkin moves
//! slide an adjacent matched pair `()` past a neighboring step; they preserve
//! the parenthesis matching, so each word's class is labelled by its counts of
//! unmatched downs (`a`) and unmatched ups (`b`).

mod colored;
mod count;
mod word;

pub use colored::{
    classify_colored, colored_fredkin_neighbors, colored_fredkin_neighbors_with, is_properly_colored, ColoredClassId,
    ColoredSpinWord, ColoredStep,
};
pub use count::{binomial, catalan, class_size, LogFactorials};
pub(crate) use word::for_each_move;
pub use word::{
    classify, enumerate_class, enumerate_class_with, flip_bijection, fredkin_neighbors, is_dyck, match_parens,
    standard_form, unflip_bijection, windows, ClassId, Matching, SpinWord, MAX_SITES,
};

/// Every properly colored Dyck word of length `2n` with `k` colors, ascending
/// by encoding.
pub fn properly_colored_dyck_words(n: usize, n_colors: usize) -> crate::Result<Vec<ColoredSpinWord>> {
    let mut out = Vec::new();
    for word in enumerate_class(ClassId::DYCK, 2 * n)? {
        let pairs = match_parens(&word).pairs();
        let total = n_colors.pow(pairs.len() as u32);
        for code in 0..total {
            let mut steps = vec![ColoredStep::down(0); 2 * n];
            let mut rest = code;
            for &(open, close) in &pairs {
                let color = (rest % n_colors) as u8;
                rest /= n_colors;
                steps[open] = ColoredStep::up(color);
                steps[close] = ColoredStep::down(color);
            }
            out.push(ColoredSpinWord::new(n_colors, steps)?);
        }
    }
    out.sort_by_key(|w| w.index());
    Ok(out)
}
