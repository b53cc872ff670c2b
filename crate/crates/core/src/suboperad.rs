//! Spans of suboperads generated by binary elements.

use crate::enumerate::enumerate_capped;
use crate::error::{Error, Result};
use crate::forest::Family;
use crate::lincomb::LinComb;
use crate::linalg::{Coordinates, Echelon};
use crate::operad::{act, compose_lin, gens, Perm};
use crate::Signs;

/// A basis of each arity `1..=max_n` of the suboperad of `family`
/// generated by the binary `generators`.
///
/// Arity `n` is spanned by `a ∘_i g` with `a` in arity `n - 1`, `g` a
/// generator or its transpose, closed under the symmetric group.
pub fn suboperad_bases(generators: &[LinComb], family: Family, max_n: usize) -> Result<Vec<Vec<LinComb>>> {
    let cap = family.default_cap();
    if max_n > cap {
        return Err(Error::ArityTooLarge { n: max_n, cap });
    }
    let swap = Perm::cycle(2, &[1, 2]);
    let binary: Vec<LinComb> = generators
        .iter()
        .flat_map(|g| [g.clone(), act(&swap, g, Signs::Ignore)])
        .collect();
    let mut bases = vec![vec![gens::unit()]];
    for n in 2..=max_n {
        let coords = Coordinates::new(enumerate_capped(family, n, cap)?);
        let mut echelon = Echelon::new();
        let mut accepted = Vec::new();
        let offer = |v: LinComb, echelon: &mut Echelon, accepted: &mut Vec<LinComb>| -> Result<()> {
            let row = coords.row(&v).ok_or_else(|| {
                Error::InvalidStructure(format!("generated element leaves {family}: {v}"))
            })?;
            if echelon.insert(row) {
                accepted.push(v);
            }
            Ok(())
        };
        for a in &bases[n - 2] {
            for g in &binary {
                for i in 1..n as u32 {
                    offer(compose_lin(a, i, g, Signs::Ignore)?, &mut echelon, &mut accepted)?;
                }
            }
        }
        let adjacent: Vec<Perm> = (1..n as u32).map(|a| Perm::cycle(n, &[a, a + 1])).collect();
        let mut next = 0;
        while next < accepted.len() {
            let v = accepted[next].clone();
            next += 1;
            for t in &adjacent {
                offer(act(t, &v, Signs::Ignore), &mut echelon, &mut accepted)?;
            }
        }
        bases.push(accepted);
    }
    Ok(bases)
}

pub fn suboperad_dims(generators: &[LinComb], family: Family, max_n: usize) -> Result<Vec<usize>> {
    Ok(suboperad_bases(generators, family, max_n)?.iter().map(Vec::len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pre_lie_and_lie() {
        assert_eq!(suboperad_dims(&[gens::x()], Family::RT, 4).unwrap(), vec![1, 2, 9, 64]);
        assert_eq!(suboperad_dims(&[gens::l()], Family::RT, 4).unwrap(), vec![1, 1, 2, 6]);
        assert_eq!(suboperad_dims(&[gens::l(), gens::c()], Family::FH, 4).unwrap(), vec![1, 2, 9, 64]);
    }
}
