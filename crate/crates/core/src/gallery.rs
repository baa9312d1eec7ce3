//! Small named classes used throughout the tests and the command line.

use crate::class::{Concept, FiniteClass, Universe};
use crate::error::{Error, Result};

/// All subsets of `[k]`.
pub fn powerset(k: usize) -> Result<FiniteClass> {
    if k > 16 {
        return Err(Error::resource("powerset limited to k ≤ 16"));
    }
    let masks: Vec<u64> = (0..1u64 << k).collect();
    named_masks(Universe::range1(k), &masks, |m| set_name(k, m, 1))
}

/// All `ℓ`-element subsets of `[k]`.
pub fn k_choose_l(k: usize, l: usize) -> Result<FiniteClass> {
    if l > k {
        return Err(Error::arg(format!("ℓ = {l} exceeds k = {k}")));
    }
    if k > 16 {
        return Err(Error::resource("k_choose_l limited to k ≤ 16"));
    }
    let masks: Vec<u64> = (0..1u64 << k).filter(|m| m.count_ones() as usize == l).collect();
    named_masks(Universe::range1(k), &masks, |m| set_name(k, m, 1))
}

/// The semigroups `⟨k, p_1, …, p_{k−1}⟩` with `p_i ∈ {k+i, 2k+i}`, restricted
/// to the window `{k+1, …, 2k−1}` where they differ.
pub fn lk_window(k: usize) -> Result<FiniteClass> {
    window(k, None)
}

/// The members of [`lk_window`] with exactly `ℓ` light generators `p_i = k+i`.
pub fn lkl_window(k: usize, l: usize) -> Result<FiniteClass> {
    if k == 0 || l > k - 1 {
        return Err(Error::arg(format!("ℓ = {l} must be below k = {k}")));
    }
    window(k, Some(l))
}

fn window(k: usize, l: Option<usize>) -> Result<FiniteClass> {
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    if k > 17 {
        return Err(Error::resource("window classes limited to k ≤ 17"));
    }
    let w = k - 1;
    let universe = Universe::numeric((k as u64 + 1)..(2 * k as u64))?;
    let masks: Vec<u64> = (0..1u64 << w)
        .filter(|m| l.is_none_or(|l| m.count_ones() as usize == l))
        .collect();
    named_masks(universe, &masks, |m| {
        let gens: Vec<String> = std::iter::once(k)
            .chain((1..k).map(|i| if m >> (i - 1) & 1 == 1 { k + i } else { 2 * k + i }))
            .map(|g| g.to_string())
            .collect();
        format!("<{}>", gens.join(","))
    })
}

/// The eight homogeneous halfspaces `H_w`, `w ∈ {−1,0,1}² ∖ {0}`, evaluated
/// on the eight points of `{−1,0,1}² ∖ {0}`.
pub fn f_signclass() -> FiniteClass {
    crate::halfspaces::f_signclass()
}

/// Builds a gallery class from a name such as `powerset(3)` or `Lkl_window(4,1)`.
pub fn by_name(text: &str) -> Result<FiniteClass> {
    let text = text.trim();
    let (name, args) = match text.find('(') {
        Some(open) if text.ends_with(')') => (&text[..open], &text[open + 1..text.len() - 1]),
        _ => (text, ""),
    };
    let nums: Vec<usize> = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse().map_err(|_| Error::parse(format!("bad gallery argument {a:?}"))))
            .collect::<Result<_>>()?
    };
    let arity = |n: usize| {
        if nums.len() == n {
            Ok(())
        } else {
            Err(Error::arg(format!("{name} takes {n} argument(s)")))
        }
    };
    match name {
        "powerset" => arity(1).and_then(|_| powerset(nums[0])),
        "k_choose_l" => arity(2).and_then(|_| k_choose_l(nums[0], nums[1])),
        "Lk_window" => arity(1).and_then(|_| lk_window(nums[0])),
        "Lkl_window" => arity(2).and_then(|_| lkl_window(nums[0], nums[1])),
        "F_signclass" => arity(0).map(|_| f_signclass()),
        _ => Err(Error::arg(format!(
            "unknown gallery class {name:?}; expected powerset, k_choose_l, Lk_window, Lkl_window or F_signclass"
        ))),
    }
}

fn set_name(k: usize, mask: u64, first: usize) -> String {
    let items: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i + first).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn named_masks(universe: Universe, masks: &[u64], name: impl Fn(u64) -> String) -> Result<FiniteClass> {
    let n = universe.size();
    let named = masks.iter().map(|&m| (name(m), Concept::from_mask(n, m))).collect();
    FiniteClass::new(universe, named)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(powerset(2).unwrap().len(), 4);
        assert_eq!(k_choose_l(4, 2).unwrap().len(), 6);
        assert!(k_choose_l(2, 3).is_err());
        let w = lk_window(3).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.universe().labels(), &["4".to_string(), "5".to_string()]);
        assert_eq!(lkl_window(4, 1).unwrap().len(), 3);
    }

    #[test]
    fn window_names_list_generators() {
        let w = lk_window(3).unwrap();
        assert_eq!(w.names(), &["<3,7,8>", "<3,4,8>", "<3,7,5>", "<3,4,5>"]);
        // <3,4,8> contains 4 but not 5
        let i = w.index_of_name("<3,4,8>").unwrap();
        assert!(w.concept(i).contains(0) && !w.concept(i).contains(1));
    }

    #[test]
    fn parse_names() {
        assert_eq!(by_name("powerset(3)").unwrap().len(), 8);
        assert_eq!(by_name("k_choose_l(4, 1)").unwrap().len(), 4);
        assert_eq!(by_name("F_signclass").unwrap().len(), 8);
        assert!(by_name("powerset").is_err());
        assert!(by_name("nope(1)").is_err());
    }
}
