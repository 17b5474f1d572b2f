use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use supertime_verify::eval::{eval, load_source, What};
use supertime_verify::{run, Branch, Options, Section, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "verify", version, about = "Replays the supertime derivations and reports each check")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks; exits 1 if any check fails.
    Run {
        #[arg(long, value_enum, default_value = "all")]
        section: Section,
        #[arg(long, value_enum, default_value = "both")]
        branch: Branch,
        #[arg(long, env = "VERIFY_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a frame literal `[[..],[..],[..]]` given inline or as a file.
    Eval {
        #[arg(long)]
        vierbein: String,
        #[arg(long, value_enum)]
        what: What,
    },
}

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

/// Exit codes: 0 success, 1 a check failed, 2 bad input.
fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match cli.cmd {
        Cmd::Run {
            section,
            branch,
            seed,
            format,
        } => {
            let report = run(Options { section, branch, seed });
            let stdout = match format {
                Format::Json => report.to_json_lines(),
                Format::Text => report.to_text(),
            };
            Outcome {
                code: u8::from(report.has_failures()),
                stdout,
                stderr: String::new(),
            }
        }
        Cmd::Eval { vierbein, what } => match load_source(&vierbein).and_then(|s| eval(&s, what)) {
            Ok(s) => Outcome {
                code: 0,
                stdout: format!("{s}\n"),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e:#}\n"),
            },
        },
    }
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use serde_json::Value;

    use super::*;

    fn verify(args: &[&str]) -> Outcome {
        execute(std::iter::once("verify").chain(args.iter().copied()))
    }

    fn lines(out: &Outcome) -> Vec<Value> {
        out.stdout
            .lines()
            .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
            .collect()
    }

    fn with_status<'a>(entries: &'a [Value], status: &str) -> Vec<&'a str> {
        entries
            .iter()
            .filter(|e| e["status"] == status)
            .map(|e| e["check_id"].as_str().unwrap())
            .collect()
    }

    #[test]
    fn osp_section_passes() {
        let out = verify(&["run", "--section", "osp", "--branch", "both", "--seed", "7", "--format", "json"]);
        assert_eq!(out.code, 0);
        let v = lines(&out);
        assert_eq!(v[0]["seed"], 7);
        assert_eq!(v[0]["convention"]["grading_toggle"], "left");
        let pass = with_status(&v[1..], "pass");
        assert_eq!(pass.iter().filter(|id| id.starts_with("osp.annihilate.")).count(), 5);
        assert_eq!(with_status(&v[1..], "report-only").len(), 15);
        let ids: Vec<&str> = v[1..].iter().map(|e| e["check_id"].as_str().unwrap()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn nogo_text_report_renders_certificate() {
        let out = verify(&["run", "--section", "nogo", "--seed", "1", "--format", "text"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("PASS        nogo.certificate"));
        assert!(out.stdout.contains("odd block determinant is 0"));
        assert!(out.stdout.contains("0 fail"));
    }

    #[test]
    fn quantum_section_exit_code_tracks_failures() {
        let out = verify(&["run", "--section", "qpi", "--branch", "plus", "--seed", "7", "--format", "json"]);
        let v = lines(&out);
        let fails = with_status(&v[1..], "fail");
        assert_eq!(fails, ["qpi.family.printed.plus.eB_nonzero", "qpi.family.printed.plus.eB_zero"]);
        assert_eq!(out.code, 1);
        assert!(v[1..].iter().all(|e| !e["check_id"].as_str().unwrap().contains("minus")));
        assert!(with_status(&v[1..], "report-only").contains(&"qpi.limit_eps1.regularized.plus"));
        assert!(with_status(&v[1..], "pass").contains(&"qpi.limit_eps0.plus"));
    }

    #[test]
    fn seed_from_environment_and_flag() {
        let seed = |args: &[&str]| lines(&verify(args))[0]["seed"].as_u64().unwrap();
        let base = ["run", "--section", "nogo", "--format", "json"];
        std::env::remove_var("VERIFY_SEED");
        assert_eq!(seed(&base), DEFAULT_SEED);
        std::env::set_var("VERIFY_SEED", "11");
        assert_eq!(seed(&base), 11);
        assert_eq!(seed(&[&base[..], &["--seed", "3"]].concat()), 3);
        std::env::remove_var("VERIFY_SEED");
    }

    #[test]
    fn repeated_runs_are_identical() {
        let args = ["run", "--section", "algebra", "--seed", "5", "--format", "json"];
        assert_eq!(verify(&args).stdout, verify(&args).stdout);
    }

    #[test]
    fn eval_operations() {
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[0,1,0],[0,0,1]]", "--what", "sdet"]);
        assert_eq!(out.stdout.trim(), "1");
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[gamma,b,c],[delta,d,e]]", "--what", "pi"]);
        assert!(out.stdout.contains("pi5 = delta_th*gamma_thb - delta_thb*gamma_th"));
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[0,1,0],[0,0,1]]", "--what", "reduce"]);
        assert!(out.stdout.contains("i*c'*cbar'"));
    }

    #[test]
    fn eval_reads_files() {
        let dir = std::env::temp_dir().join(format!("verify-eval-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("frame.txt");
        std::fs::write(&p, "[[-1, 0, 0],\n [0, 0, 1],\n [0, 1, 0]]\n").unwrap();
        let out = verify(&["eval", "--vierbein", p.to_str().unwrap(), "--what", "metric"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with('['));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn eval_errors() {
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[0,0,theta],[0,thetabar,0]]", "--what", "sdet"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("parity mismatch"));
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[0,1,0],[0,0,e_B*thetabar*theta]]", "--what", "sdet"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("odd-odd block is singular"));
        let out = verify(&["eval", "--vierbein", "[[1,0,0],[0,1,0],[0,0,(1]]", "--what", "sdet"]);
        assert!(out.stderr.contains("column 25"), "{}", out.stderr);
    }

    #[test]
    fn bad_arguments_are_rejected() {
        assert_eq!(verify(&["run", "--section", "nowhere"]).code, 2);
        assert_eq!(verify(&["--help"]).code, 0);
    }
}
