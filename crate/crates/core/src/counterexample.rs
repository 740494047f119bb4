//! The three-point space `b < a > c` with `α: Z → G`, where `G` is `Z` at
//! `a` and zero at `b, c`. The open-set kernel of `α` is a precosheaf that
//! fails the cosheaf condition for the cover by minimal opens.

use std::sync::Arc;

use crate::cosheaf::{
    canonical_comparison, cosheaf_axiom_check, cosheafify, hat_eval, is_iso, kernel_functor, open_kernel_table,
    AxiomCheck, CellularCosheaf, NatTrans, PrecosheafTable,
};
use crate::error::Result;
use crate::group::{AbGroup, IsoClass};
use crate::linalg::IntMatrix;
use crate::poset::{validate_poset, Cover, FinPoset, OpenSet, DEFAULT_OPEN_CAP};

#[derive(Clone, Debug)]
pub struct KernelCounterexample {
    pub poset: Arc<FinPoset>,
    pub alpha: NatTrans,
    pub opens: Vec<OpenSet>,
    /// `U ↦ ker α(U)` on every open.
    pub table: PrecosheafTable,
    /// Cover `{U_a, U_b, U_c}` of the whole space.
    pub check: AxiomCheck,
    /// Cosheafification of the table, as a cellular cosheaf.
    pub cosheafified: CellularCosheaf,
    /// Its value on the whole space.
    pub cosheafified_value: IsoClass,
    /// Pointwise kernel of `α`.
    pub pointwise_kernel: CellularCosheaf,
    /// Whether the comparison from the cosheafification to the table is an
    /// isomorphism on each minimal open.
    pub comparison_iso_at_points: Vec<bool>,
}

pub fn kernel_counterexample() -> Result<KernelCounterexample> {
    let poset = Arc::new(validate_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")])?);
    let z = AbGroup::free(1);
    let constant = CellularCosheaf::constant(&poset, &z);
    let g = CellularCosheaf::from_matrices(
        &poset,
        vec![z.clone(), AbGroup::trivial(), AbGroup::trivial()],
        vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 1)],
    )?;
    let alpha = NatTrans::from_matrices(
        &constant,
        &g,
        vec![IntMatrix::identity(1), IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 1)],
    )?;
    let opens = poset.enumerate_opens(DEFAULT_OPEN_CAP)?;
    let table = open_kernel_table(&alpha, &opens)?;
    let whole = poset.full_open();
    let cover = Cover::new((0..poset.len()).map(|x| poset.principal_open(x)).collect(), whole.clone())?;
    let check = cosheaf_axiom_check(&table, &whole, &cover)?;
    let cosheafified = cosheafify(&table)?;
    let cosheafified_value = hat_eval(&cosheafified, &whole)?.iso_class();
    let (pointwise_kernel, _) = kernel_functor(&alpha)?;
    let comparison_iso_at_points = (0..poset.len())
        .map(|x| is_iso(&canonical_comparison(&table, &poset.principal_open(x))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelCounterexample {
        poset,
        alpha,
        opens,
        table,
        check,
        cosheafified,
        cosheafified_value,
        pointwise_kernel,
        comparison_iso_at_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_the_failure() {
        let ex = kernel_counterexample().unwrap();
        let expected_table = [
            (vec![], IsoClass::trivial()),
            (vec!["a"], IsoClass::trivial()),
            (vec!["a", "b"], IsoClass::free(1)),
            (vec!["a", "c"], IsoClass::free(1)),
            (vec!["a", "b", "c"], IsoClass::free(1)),
        ];
        assert_eq!(ex.opens.len(), expected_table.len());
        for (names, class) in expected_table {
            let u = ex.poset.open_from_names(&names).unwrap();
            assert_eq!(ex.table.value(&u).unwrap().iso_class(), class, "{names:?}");
        }
        assert_eq!(ex.check.nerve_colimit, IsoClass::free(2));
        assert_eq!(ex.check.value, IsoClass::free(1));
        assert!(!ex.check.holds());
        assert_eq!(ex.cosheafified_value, IsoClass::free(2));
        let pointwise: Vec<IsoClass> = ex.cosheafified.groups().iter().map(AbGroup::iso_class).collect();
        assert_eq!(pointwise, vec![IsoClass::trivial(), IsoClass::free(1), IsoClass::free(1)]);
        assert!(ex.comparison_iso_at_points.iter().all(|&b| b));
        let k: Vec<IsoClass> = ex.pointwise_kernel.groups().iter().map(AbGroup::iso_class).collect();
        assert_eq!(k, pointwise);
    }
}
