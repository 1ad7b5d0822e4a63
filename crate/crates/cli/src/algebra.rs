use serde_json::json;

use qcob::exactalg::novikov::{divided_power, nov_add, nov_mul};
use qcob::fock::{basis_change, bracket, central_term, FockBasis, FockOperator, FockPolynomial};
use qcob::NovikovElement;

use crate::report::{inline_or_file, input, CliError, Report};
use crate::{FockCommand, NovCommand};

fn element(arg: &str) -> Result<NovikovElement, CliError> {
    NovikovElement::from_json(&inline_or_file(arg)?).map_err(input("novikov element"))
}

fn nov_report(e: &NovikovElement) -> Report {
    Report::value(e.to_string(), e.to_json_value())
}

pub fn nov(command: NovCommand) -> Result<Report, CliError> {
    match command {
        NovCommand::Mul { a, b } => {
            let p = nov_mul(&element(&a)?, &element(&b)?).map_err(input("product"))?;
            Ok(nov_report(&p))
        }
        NovCommand::Add { a, b } => {
            let s = nov_add(&element(&a)?, &element(&b)?).map_err(input("sum"))?;
            Ok(nov_report(&s))
        }
        NovCommand::DividedPower { k, rank } => Ok(nov_report(&divided_power(k, rank))),
        NovCommand::Degree { elem, c1 } => {
            let e = element(&elem)?;
            match e.homogeneous_degree(&c1).map_err(input("degree"))? {
                Some(d) => Ok(Report::value(d.to_string(), json!(d))),
                None => Ok(Report::value("not homogeneous", json!(null))),
            }
        }
    }
}

fn operator(s: &str) -> Result<FockOperator, CliError> {
    s.parse().map_err(input("operator"))
}

fn polynomial(src: &str, bound: usize) -> Result<FockPolynomial, CliError> {
    FockPolynomial::parse(src, bound).map_err(input("polynomial"))
}

pub fn fock(command: FockCommand) -> Result<Report, CliError> {
    match command {
        FockCommand::Act { op, poly, bound } => {
            let p = polynomial(&poly, bound)?;
            let r = operator(&op)?.apply(&p).map_err(input("action"))?;
            Ok(Report::display(r.in_basis(p.basis())))
        }
        FockCommand::Bracket { a, b, poly, bound } => {
            let p = polynomial(&poly, bound)?;
            let r = bracket(operator(&a)?, operator(&b)?, &p).map_err(input("bracket"))?;
            Ok(Report::display(r))
        }
        FockCommand::Central { m, bound } => {
            let c = central_term(m, bound).map_err(input("central term"))?;
            Ok(Report::display(c))
        }
        FockCommand::Basis { poly, to, bound } => {
            let p = polynomial(&poly, bound)?;
            let target = if to == "T" { FockBasis::Oscillator } else { FockBasis::Laurent };
            Ok(Report::display(basis_change(&p, target)))
        }
    }
}
