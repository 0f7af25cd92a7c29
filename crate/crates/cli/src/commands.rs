use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use skelgraph::graph::Graph;
use skelgraph::lineage::{complete_lineage, grid2d_lineage, GradedGraph};
use skelgraph::manifest::{read_lineage, write_lineage};
use skelgraph::multigrid::{parse_algorithms, run_benchmark, Algorithm, Bc, DirichletProblem};
use skelgraph::skeletal::{
    appendix_oracle, skeletal_product, thicken, Kind, LevelMap, Mode, ProductSpec, WeightMode,
};
use skelgraph::{mtx, Error, SparseMatrix};

use crate::{
    BaseKind, BenchArgs, CnnArgs, Command, ExportArgs, Format, GenArgs, ProductArgs, ProductKind,
    ThickenArgs, ValidateArgs, Weights,
};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Product(a) => product(a),
        Command::Thicken(a) => thicken_cmd(a),
        Command::Validate(a) => validate(a),
        Command::Export(a) => export(a),
        Command::CnnStructure(a) => cnn_structure(a),
        Command::Bench(a) => bench(a),
    }
}

fn sizes(gg: &GradedGraph) -> String {
    let s: Vec<String> = gg.level_sizes().iter().map(ToString::to_string).collect();
    s.join(",")
}

fn save(dir: &Path, gg: &GradedGraph) -> Outcome {
    write_lineage(dir, gg)?;
    println!(
        "{}: {} levels, sizes {} -> {}",
        gg.name,
        gg.num_levels(),
        sizes(gg),
        dir.display()
    );
    Ok(())
}

fn gen(a: GenArgs) -> Outcome {
    save(&a.out, &a.generator.build(a.levels, !a.no_root_loop))
}

fn base_kind(k: BaseKind) -> Kind {
    match k {
        BaseKind::Box => Kind::Box,
        BaseKind::Cross => Kind::Cross,
        BaseKind::Strong => Kind::Strong,
    }
}

fn product(a: ProductArgs) -> Outcome {
    let inputs = a
        .inputs
        .iter()
        .map(|p| read_lineage(p))
        .collect::<Result<Vec<_>, _>>()?;
    let factors: Vec<&GradedGraph> = inputs.iter().collect();
    let two = |what: &str| {
        if factors.len() == 2 {
            Ok(())
        } else {
            Err(Failure::usage(format!(
                "{what} takes exactly two inputs, got {}",
                factors.len()
            )))
        }
    };
    let mut spec = match a.kind {
        ProductKind::Box => ProductSpec::new(Kind::Box),
        ProductKind::Cross => ProductSpec::new(Kind::Cross),
        ProductKind::Strong => ProductSpec::new(Kind::Strong),
        ProductKind::NwayHat => ProductSpec::new(Kind::Cross).mode(Mode::Hat),
        ProductKind::NwayTilde => ProductSpec::new(Kind::Cross).mode(Mode::Tilde),
        ProductKind::Dilated => {
            two("dilated")?;
            if a.rho.len() != 2 {
                return Err(Failure::usage("dilated needs --rho R1 R2"));
            }
            ProductSpec::new(base_kind(a.base))
                .maps(a.rho.iter().map(|&r| LevelMap::Dilate(r)).collect())
        }
    };
    if !matches!(a.kind, ProductKind::Dilated) && !a.rho.is_empty() {
        return Err(Failure::usage("--rho only applies to dilated products"));
    }
    if matches!(
        a.kind,
        ProductKind::Box | ProductKind::Cross | ProductKind::Strong
    ) {
        two(&format!("{:?}", a.kind).to_lowercase())?;
    }
    spec = spec.weights(match a.weights {
        Weights::Pattern => WeightMode::Pattern,
        Weights::Prolongation => WeightMode::Prolongation,
    });
    if let Some(t) = a.top {
        spec = spec.top(t);
    }
    let prod = skeletal_product(&factors, &spec)?;

    if a.oracle_check {
        let identity_maps =
            !matches!(a.kind, ProductKind::Dilated) || a.rho.iter().all(|r| r.to_string() == "1");
        if factors.len() != 2 || !identity_maps || spec.weights != WeightMode::Pattern {
            return Err(Failure::usage(
                "--oracle-check supports two-factor pattern-weighted products without dilation",
            ));
        }
        let oracle = appendix_oracle(factors[0], factors[1], spec.kind, prod.top())?;
        if oracle.levels != prod.levels || oracle.inter != prod.inter {
            return Err(Failure::invalid(
                "product differs from the block-matrix construction",
            ));
        }
        println!("oracle check passed");
    }
    save(&a.out, &prod)
}

fn thicken_cmd(a: ThickenArgs) -> Outcome {
    save(&a.out, &thicken(&read_lineage(&a.input)?))
}

fn validate(a: ValidateArgs) -> Outcome {
    let gg = read_lineage(&a.input).map_err(|e| match e {
        Error::InvalidLineage(_)
        | Error::DimensionMismatch { .. }
        | Error::NotSymmetric { .. }
        | Error::NotSquare { .. } => Failure::invalid(e.to_string()),
        other => other.into(),
    })?;
    let d = gg.validate();
    print!("{d}");
    if d.is_ok() {
        Ok(())
    } else {
        Err(Failure::invalid(format!(
            "{} issue(s) in {}",
            d.issues.len(),
            gg.name
        )))
    }
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .adj()
        .entries()
        .iter()
        .filter(|e| e.0 <= e.1)
        .map(|&(r, c, v)| json!([r, c, v]))
        .collect();
    json!({ "order": g.order(), "edges": edges })
}

fn matrix_json(m: &SparseMatrix) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .iter()
        .map(|&(r, c, v)| json!([r, c, v]))
        .collect();
    json!({ "rows": m.nrows(), "cols": m.ncols(), "entries": entries })
}

fn export(a: ExportArgs) -> Outcome {
    let gg = read_lineage(&a.input)?;
    let graph = match a.level {
        Some(l) if l > gg.top() => {
            return Err(Failure::usage(format!(
                "level {l} beyond top level {}",
                gg.top()
            )))
        }
        Some(l) => gg.levels[l].clone(),
        None => gg.assemble_flat(),
    };
    let label = match a.level {
        Some(l) => format!("{}_level_{l}", gg.name),
        None => gg.name.clone(),
    };
    let text = match a.format {
        Format::Mtx => mtx::to_string(graph.adj(), true),
        Format::Dot => graph.to_dot(&label),
        Format::Edges => graph.to_edge_list(),
        Format::Json => {
            let v = match a.level {
                Some(_) => json!({ "name": label, "graph": graph_json(&graph) }),
                None => json!({
                    "name": gg.name,
                    "levelSizes": gg.level_sizes(),
                    "levels": gg.levels.iter().map(graph_json).collect::<Vec<_>>(),
                    "inter": gg.inter.iter().map(matrix_json).collect::<Vec<_>>(),
                    "metadata": gg.metadata,
                }),
            };
            serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
        }
    };
    emit(a.out.as_deref(), &text)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cnn_structure(a: CnnArgs) -> Outcome {
    let grid = grid2d_lineage(a.grid_levels);
    let features = complete_lineage(a.feature_levels);
    let prod = skeletal_product(&[&grid, &features], &ProductSpec::new(Kind::Strong))?;
    save(&a.out, &prod)?;
    let top = &prod.levels[prod.top()];
    let dot = a.out.join("top_level.dot");
    emit(
        Some(&dot),
        &top.to_dot(&format!("{}_level_{}", prod.name, prod.top())),
    )
}

fn bench(a: BenchArgs) -> Outcome {
    let bc: Bc = a.bc.parse()?;
    let algorithms = match &a.algorithms {
        Some(list) => parse_algorithms(list)?,
        None => Algorithm::DEFAULT.to_vec(),
    };
    if algorithms.is_empty() {
        return Err(Failure::usage("no algorithms given"));
    }
    if let Some(dir) = &a.problem_out {
        let p = DirichletProblem::new(a.k, bc)?;
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        mtx::write(&dir.join("A.mtx"), &p.a, true)?;
        let mut b = String::new();
        for v in &p.b {
            writeln!(b, "{v}").unwrap();
        }
        emit(Some(&dir.join("b.txt")), &b)?;
    }
    let trace = run_benchmark(a.k, bc, &algorithms, a.budget)?;
    emit(a.out.as_deref(), &trace.to_csv())
}
