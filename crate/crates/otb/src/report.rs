//! Tab-separated reports with `#`-prefixed headers.

use std::fmt::Write as _;

use otb_core::linmodel::EstimabilityReport;
use otb_core::relations::RelationMatrix;
use otb_core::search::SubspaceScore;
use otb_core::Plan;

pub fn plan_header(plan: &Plan) -> String {
    format!(
        "# plan s={} m={} b={} k={} n={}\n",
        plan.field().order(),
        plan.m(),
        plan.b(),
        plan.k(),
        plan.n()
    )
}

/// Pair rows `<effectA>\t<effectB>\t<flags>`, then `<effect>\t<verdict>`
/// rows for the block factor.
pub fn relations_tsv(rm: &RelationMatrix) -> String {
    let ps = rm.model.pencils();
    let mut out = String::from("# pairs\n# effectA\teffectB\tflags\n");
    for (i, j, r) in rm.pairs() {
        writeln!(out, "{}\t{}\t{}", ps[i], ps[j], r.flags()).expect("string write");
    }
    out.push_str("# block relations\n# effect\tverdict\n");
    for (p, v) in ps.iter().zip(&rm.blocks) {
        writeln!(out, "{}\t{}", p, v).expect("string write");
    }
    out
}

/// `<effect>\t<verdict>\t<df>` rows and a totals line.
pub fn estimability_tsv(rep: &EstimabilityReport) -> String {
    let mut out = String::from("# estimability\n# effect\tverdict\tdf\n");
    for e in &rep.entries {
        writeln!(out, "{}\t{}\t{}", e.pencil, e.verdict, e.df).expect("string write");
    }
    writeln!(out, "# model_rank={} block_rank={} n={}", rep.model_rank, rep.block_rank, rep.n)
        .expect("string write");
    writeln!(
        out,
        "estimable={} partial={} lost={}",
        rep.estimable(),
        rep.partial(),
        rep.lost()
    )
    .expect("string write");
    out
}

pub fn search_tsv(scores: &[SubspaceScore]) -> String {
    let mut out = String::from("# rank\tsubspace\tblocks\testimable\tpartial\tconfounded\n");
    for (i, s) in scores.iter().enumerate() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            s.subspace,
            s.n_blocks,
            s.n_estimable,
            s.n_partial,
            s.n_confounded_with_block
        )
        .expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use otb_core::catalog::plan_p;
    use otb_core::linmodel::estimable_pencils;
    use otb_core::relations::relation_matrix;
    use otb_core::{EffectModel, Field};

    #[test]
    fn relation_rows() {
        let f = Field::new(3).unwrap();
        let model = EffectModel::mains(4, f);
        let text = relations_tsv(&relation_matrix(&plan_p(), &model).unwrap());
        assert!(text.contains("A\tC\tOTB\n"));
        assert!(text.contains("A\tVariesWithinBlocks\n"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6 + 4);
    }

    #[test]
    fn totals_line() {
        let f = Field::new(3).unwrap();
        let rep = estimable_pencils(&plan_p(), &EffectModel::mains(4, f)).unwrap();
        let text = estimability_tsv(&rep);
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("estimable="));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
    }
}
