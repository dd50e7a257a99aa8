use crate::error::{Error, Result};
use crate::problems::ProblemSlice;
use crate::string::Alphabet;
use crate::universe::{Slice, Word};

pub const MAX_COMPOSITE_WIDTH: usize = 10;

/// Value of a binary word, most significant bit first.
pub(crate) fn binary_value(x: &Word) -> u64 {
    x.letters().iter().fold(0, |acc, l| acc * 2 + l.0 as u64)
}

fn proper_divisor(d: u64, v: u64) -> bool {
    1 < d && d < v && v.is_multiple_of(d)
}

/// Compositeness of fixed-width binary numbers. Regions are indexed by the
/// divisors `d = 2 ..= 2^width - 1`; `0` and `1` are not composite.
pub fn composite_problem(width: usize) -> Result<ProblemSlice> {
    if width == 0 || width > MAX_COMPOSITE_WIDTH {
        return Err(Error::Validation(format!(
            "composite width must be between 1 and {MAX_COMPOSITE_WIDTH}, got {width}"
        )));
    }
    let slice = Slice::full(Alphabet::binary(), width)?.relabel(format!("binary^{width}"));
    let top = 1u64 << width;
    let divisors: Vec<u64> = (2..top).collect();
    let solutions = divisors.iter().map(|d| format!("d={d}")).collect();
    ProblemSlice::new(
        slice,
        format!("composite {width}"),
        |x| {
            let v = binary_value(x);
            (2..v).any(|d| v.is_multiple_of(d))
        },
        solutions,
        move |x, i| proper_divisor(divisors[i], binary_value(x)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_four_targets() {
        let p = composite_problem(4).unwrap();
        let values: Vec<u64> = p.target_set().iter().map(binary_value).collect();
        assert_eq!(values, [4, 6, 8, 9, 10, 12, 14, 15]);
        assert_eq!(p.alpha(), 14);
    }

    #[test]
    fn divisor_regions() {
        let p = composite_problem(4).unwrap();
        let w = |t: &str| p.slice().parse_word(t).unwrap();
        // Region index i holds divisor i + 2.
        assert!(p.satisfies(&w("1100"), 1));
        assert!((0..p.alpha()).all(|i| !p.satisfies(&w("1101"), i)));
        assert!(!p.satisfies(&w("0010"), 0));
    }

    #[test]
    fn degenerate_widths() {
        assert!(matches!(composite_problem(2), Err(Error::Degenerate(_))));
        assert!(composite_problem(0).is_err());
        assert!(composite_problem(3).is_ok());
    }
}
