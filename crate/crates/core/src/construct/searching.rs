//! Searching-set families from binary ranks.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{count} searching sets cannot give distinct codewords to {needed} ranks")]
pub struct SearchingError {
    pub count: usize,
    /// Number of ranks required, including the all-zero rank.
    pub needed: usize,
}

/// `count` subsets of `domain` whose membership vectors are pairwise distinct
/// on the non-excluded elements.
///
/// Elements are ranked in domain order. When any excluded element occurs in
/// the domain, excluded elements take rank 0 and the rest take `1..`;
/// otherwise ranks start at 0. Subset `j` holds the elements whose rank has
/// bit `j` set, in domain order.
pub fn searching_family<T: Copy + PartialEq>(
    domain: &[T],
    count: usize,
    excluded: &[T],
) -> Result<Vec<Vec<T>>, SearchingError> {
    let is_excluded = |x: &T| excluded.contains(x);
    let offset = usize::from(domain.iter().any(is_excluded));
    let free = domain.iter().filter(|x| !is_excluded(x)).count();
    let needed = free + offset;
    let capacity = if count >= usize::BITS as usize { usize::MAX } else { 1usize << count };
    if needed > capacity {
        return Err(SearchingError { count, needed });
    }
    let mut sets = vec![Vec::new(); count];
    let mut next = offset;
    for &x in domain {
        if is_excluded(&x) {
            continue;
        }
        for (j, set) in sets.iter_mut().enumerate() {
            if next >> j & 1 == 1 {
                set.push(x);
            }
        }
        next += 1;
    }
    Ok(sets)
}

/// Membership vector of `x` over `family`, bit `j` for set `j`.
pub fn membership<T: PartialEq>(family: &[Vec<T>], x: &T) -> u64 {
    family
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(x))
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_elements_two_sets() {
        let fam = searching_family(&[10, 11, 12, 13], 2, &[]).unwrap();
        let mut codes: Vec<u64> = [10, 11, 12, 13].iter().map(|x| membership(&fam, x)).collect();
        codes.sort_unstable();
        assert_eq!(codes, vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn sixteen_elements_four_sets() {
        let domain: Vec<u32> = (100..116).collect();
        let fam = searching_family(&domain, 4, &[]).unwrap();
        let mut codes: Vec<u64> = domain.iter().map(|x| membership(&fam, x)).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), 16);
        assert!(fam.iter().all(|s| s.len() == 8));
    }

    #[test]
    fn excluded_gets_zero_others_nonzero() {
        let domain = [5u32, 0, 7, 9];
        let fam = searching_family(&domain, 2, &[0]).unwrap();
        assert_eq!(membership(&fam, &0), 0);
        let codes: Vec<u64> = [5, 7, 9].iter().map(|x| membership(&fam, x)).collect();
        assert_eq!(codes, vec![1, 2, 3]);
    }

    #[test]
    fn too_few_sets() {
        assert_eq!(
            searching_family(&[1, 2, 3, 4, 5], 2, &[]),
            Err(SearchingError { count: 2, needed: 5 })
        );
        // Four non-excluded elements plus the zero rank need three sets.
        assert!(searching_family(&[0, 1, 2, 3, 4], 2, &[0]).is_err());
        assert!(searching_family(&[0, 1, 2, 3, 4], 3, &[0]).is_ok());
    }

    #[test]
    fn empty_domain() {
        let none: &[u32] = &[];
        assert_eq!(searching_family(none, 3, none).unwrap(), vec![Vec::<u32>::new(); 3]);
        assert_eq!(searching_family(&[4u32], 0, none).unwrap(), Vec::<Vec<u32>>::new());
    }
}
