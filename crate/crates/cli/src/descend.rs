use serde_json::json;

use qcob::descend::{
    display_descendant_poly, enumerate_descendants, large_phase_dims, parse_descendant_poly, schur_q,
    small_phase_specialize, SchurQElement, TargetProfile,
};

use crate::report::{input, read_file, CliError, Report};
use crate::{DescendCommand, SchurqCommand};

fn profile(path: &std::path::Path) -> Result<TargetProfile, CliError> {
    TargetProfile::from_json(&read_file(path)?).map_err(input("profile"))
}

pub fn descend(command: DescendCommand) -> Result<Report, CliError> {
    match command {
        DescendCommand::Vars { profile: path, bound } => {
            let p = profile(&path)?;
            let mut lines = Vec::new();
            let mut list = Vec::new();
            for v in enumerate_descendants(&p, bound) {
                let deg = v.degree(&p).map_err(input("profile"))?;
                lines.push(format!("{v}  degree {deg}"));
                list.push(json!({"k": v.k, "i": v.i, "degree": deg}));
            }
            Ok(Report::value(lines.join("\n"), json!(list)))
        }
        DescendCommand::Specialize { expr } => {
            let p = parse_descendant_poly(&expr).map_err(input("expression"))?;
            Ok(Report::display(display_descendant_poly(&small_phase_specialize(&p))))
        }
        DescendCommand::Dims { profile: path, bound } => {
            let dims = large_phase_dims(&profile(&path)?, bound).map_err(input("profile"))?;
            let text = (0..dims.hopf.len())
                .map(|n| format!("degree {n}: primitives {}, total {}", dims.primitive[n], dims.hopf[n]))
                .collect::<Vec<_>>()
                .join("\n");
            // u128 counts are emitted as strings to stay exact in every JSON reader
            let as_strings = |v: &[u128]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let json = json!({"primitive": as_strings(&dims.primitive), "hopf": as_strings(&dims.hopf)});
            Ok(Report::value(text, json))
        }
    }
}

pub fn schurq(command: SchurqCommand) -> Result<Report, CliError> {
    match command {
        SchurqCommand::Expand { r, vars } => {
            let p = schur_q(r, vars);
            Ok(Report::display(p.display_with(|i| format!("x_{i}"))))
        }
        SchurqCommand::Coproduct { r } => Ok(Report::display(SchurQElement::q(r).coproduct())),
    }
}
