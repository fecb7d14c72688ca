use super::Formula;

/// Weighted symbol count. An announcement weighs its announced formula once
/// and its continuation three times.
pub fn size(f: &Formula) -> u64 {
    match f {
        Formula::Atom(_) | Formula::Bottom => 1,
        Formula::Neg(g) | Formula::Know(_, g) | Formula::Box(g) => size(g).saturating_add(1),
        Formula::Or(l, r) => size(l).saturating_add(size(r)).saturating_add(1),
        Formula::Announce(a, c) => size(a).saturating_add(size(c).saturating_mul(3)),
    }
}

/// Nesting depth of arbitrary-announcement operators.
pub fn box_depth(f: &Formula) -> u32 {
    match f {
        Formula::Atom(_) | Formula::Bottom => 0,
        Formula::Neg(g) | Formula::Know(_, g) => box_depth(g),
        Formula::Or(l, r) | Formula::Announce(l, r) => box_depth(l).max(box_depth(r)),
        Formula::Box(g) => box_depth(g) + 1,
    }
}

/// The strict orders used to rank formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    /// Compare by [`size`].
    Size,
    /// Compare by [`box_depth`].
    BoxDepth,
    /// Lexicographic: box depth first, then size.
    SizeBoxDepth,
    /// Proper-subformula relation.
    StrictSubformula,
}

impl Order {
    pub const ALL: [Order; 4] = [
        Order::Size,
        Order::BoxDepth,
        Order::SizeBoxDepth,
        Order::StrictSubformula,
    ];
}

/// Whether `f` is strictly below `g` in the given order.
pub fn less(f: &Formula, g: &Formula, order: Order) -> bool {
    match order {
        Order::Size => size(f) < size(g),
        Order::BoxDepth => box_depth(f) < box_depth(g),
        Order::SizeBoxDepth => (box_depth(f), size(f)) < (box_depth(g), size(g)),
        Order::StrictSubformula => is_proper_subformula(f, g),
    }
}

fn is_proper_subformula(f: &Formula, g: &Formula) -> bool {
    g.children()
        .into_iter()
        .any(|c| c == f || is_proper_subformula(f, c))
}
