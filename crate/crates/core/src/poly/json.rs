//! Term-list serialization: `[{"exp": [...], "coef": "p/q"}, ...]` in graded order.

use serde::{Deserialize, Serialize};

use super::{Coef, Ctx, MPoly};
use crate::error::Result;
use crate::exact::{parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exp: Vec<u32>,
    pub coef: String,
}

pub fn poly_to_json<C: Coef>(p: &MPoly<C>) -> Vec<JsonTerm> {
    let n = p.ctx().nvars();
    p.graded_terms().into_iter().map(|(m, c)| JsonTerm { exp: m.exps(n), coef: c.to_string() }).collect()
}

pub fn poly_from_json(ctx: &Ctx, terms: &[JsonTerm]) -> Result<MPoly<Rat>> {
    let parsed = terms.iter().map(|t| Ok((t.exp.clone(), parse_rat(&t.coef)?))).collect::<Result<Vec<_>>>()?;
    MPoly::from_exp_terms(ctx, parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarContext};

    #[test]
    fn round_trip_in_graded_order() {
        let ctx = VarContext::xv(1);
        let p = parse_poly("4*X^3 + 4*V - 1/2", &ctx).unwrap();
        let js = poly_to_json(&p);
        assert_eq!(
            serde_json::to_string(&js).unwrap(),
            r#"[{"exp":[3,0],"coef":"4"},{"exp":[0,1],"coef":"4"},{"exp":[0,0],"coef":"-1/2"}]"#
        );
        assert_eq!(poly_from_json(&ctx, &js).unwrap(), p);
        assert!(poly_from_json(&ctx, &[JsonTerm { exp: vec![1], coef: "1".into() }]).is_err());
    }
}
