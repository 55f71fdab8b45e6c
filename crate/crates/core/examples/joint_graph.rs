//! The joint Tanner graph for a toy pair of codes, with and without the
//! hidden difference variables.
//!
//! cargo run --example joint_graph

use swldpc::{CorrelationModel, GraphForm, JointTannerGraph, SparseParityMatrix};

fn main() -> swldpc::Result<()> {
    let h1 = SparseParityMatrix::from_rows(3, vec![vec![0, 1]])?;
    let h2 = SparseParityMatrix::from_rows(3, vec![vec![0, 1], vec![1, 2]])?;
    let model = CorrelationModel::new(0.9)?;

    let explicit = JointTannerGraph::build(&h1, &h2, &model, GraphForm::ExplicitZ)?;
    println!(
        "# {} form: {} variables, {} checks, {} edges",
        explicit.form(),
        explicit.vars().len(),
        explicit.checks().len(),
        explicit.num_edges()
    );
    print!("{}", explicit.to_debug_text());

    let folded = explicit.fold_hidden()?;
    println!(
        "\n# {} form: {} variables, {} checks, {} edges",
        folded.form(),
        folded.vars().len(),
        folded.checks().len(),
        folded.num_edges()
    );
    print!("{}", folded.to_debug_text());
    println!(
        "\ncorrelation check factor tanh(L/2) = {:.6}",
        folded.check_factor(folded.correlation_check(0))
    );
    Ok(())
}
