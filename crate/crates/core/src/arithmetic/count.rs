use rayon::prelude::*;

use crate::algebra::field::Field;
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::form::HomogeneousForm;
use crate::algebra::projective::{for_each_tuple, projective_size};
use crate::error::{Error, Result};

/// A form flattened to `(coefficient, variable indices with repetition)`.
struct Compiled {
    terms: Vec<(Fe, Vec<usize>)>,
}

impl Compiled {
    fn new(g: &HomogeneousForm<FiniteField>) -> Self {
        Compiled {
            terms: g.terms().map(|(m, c)| (*c, m.factors())).collect(),
        }
    }

    #[inline]
    fn is_zero_at(&self, f: &FiniteField, x: &[Fe]) -> bool {
        let mut acc = Fe::ZERO;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &i in vars {
                t = f.mul_fast(t, x[i]);
            }
            acc = f.add_fast(acc, t);
        }
        acc == Fe::ZERO
    }
}

fn check_budget(q: u64, nvars: usize, nforms: usize, budget: u128) -> Result<()> {
    let size = projective_size(q, nvars as u32).unwrap_or(u128::MAX);
    let needed = size.saturating_mul(nforms.max(1) as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn check_forms(forms: &[HomogeneousForm<FiniteField>], nvars: usize) -> Result<()> {
    if nvars == 0 || forms.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::InvalidInput("forms must share the number of variables".into()));
    }
    Ok(())
}

/// Number of points of `P^{n-1}(F)` where all `forms` vanish, iterating
/// over representatives with first nonzero coordinate 1. Strata (leading
/// position, next coordinate) are counted in parallel.
pub fn count_projective_zeros(
    field: &FiniteField,
    forms: &[HomogeneousForm<FiniteField>],
    nvars: usize,
    budget: u128,
) -> Result<u64> {
    check_forms(forms, nvars)?;
    check_budget(field.q(), nvars, forms.len(), budget)?;
    let compiled: Vec<Compiled> = forms.iter().map(Compiled::new).collect();
    let values: Vec<Fe> = field.elements().collect();
    let mut units: Vec<(usize, Option<Fe>)> = Vec::new();
    for lead in 0..nvars {
        if lead + 1 < nvars {
            units.extend(values.iter().map(|&v| (lead, Some(v))));
        } else {
            units.push((lead, None));
        }
    }
    let total = units
        .par_iter()
        .map(|&(lead, next)| {
            let mut x = vec![Fe::ZERO; nvars];
            x[lead] = Fe::ONE;
            let start = match next {
                Some(v) => {
                    x[lead + 1] = v;
                    lead + 2
                }
                None => lead + 1,
            };
            let mut n = 0u64;
            for_each_tuple(&values, nvars - start, |tail| {
                x[start..].copy_from_slice(tail);
                if compiled.iter().all(|g| g.is_zero_at(field, &x)) {
                    n += 1;
                }
                true
            });
            n
        })
        .sum();
    Ok(total)
}

/// Second counting strategy: hyperplane slices `{X_{m-1} = 1, X_j = 0 for
/// j >= m}`, each an affine space swept in full. Single-threaded.
pub fn count_projective_zeros_by_slices(
    field: &FiniteField,
    forms: &[HomogeneousForm<FiniteField>],
    nvars: usize,
    budget: u128,
) -> Result<u64> {
    check_forms(forms, nvars)?;
    check_budget(field.q(), nvars, forms.len(), budget)?;
    let values: Vec<Fe> = field.elements().collect();
    let mut n = 0u64;
    for m in (1..=nvars).rev() {
        let mut x = vec![Fe::ZERO; nvars];
        x[m - 1] = Fe::ONE;
        for_each_tuple(&values, m - 1, |head| {
            x[..m - 1].copy_from_slice(head);
            if forms.iter().all(|g| field.is_zero(&g.eval(field, &x))) {
                n += 1;
            }
            true
        });
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::DEFAULT_BUDGET;

    #[test]
    fn projective_space_and_hyperplane() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(count_projective_zeros(&f, &[], 6, DEFAULT_BUDGET).unwrap(), 19608);
        let h = HomogeneousForm::linear(&f, &[Fe(1), Fe(2), Fe(0), Fe(0), Fe(3), Fe(1)]);
        assert_eq!(count_projective_zeros(&f, &[h.clone()], 6, DEFAULT_BUDGET).unwrap(), 2801);
        assert_eq!(count_projective_zeros_by_slices(&f, &[h], 6, DEFAULT_BUDGET).unwrap(), 2801);
    }

    #[test]
    fn budget_is_enforced() {
        let f = FiniteField::prime(13).unwrap();
        assert!(matches!(
            count_projective_zeros(&f, &[], 6, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
