//! The versioned report wrapper and the exit-code contract.

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, OutputFormat};
use crate::commands::dispatch;
use crate::error::{CliError, ErrorKind};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// Exit status of a verification run with failing suites.
pub const EXIT_VERIFICATION_FAILED: i32 = 1;

#[derive(Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs_echo: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorObject>,
}

#[derive(Serialize)]
pub struct ErrorObject {
    pub kind: ErrorKind,
    pub message: String,
}

pub struct Execution {
    pub exit_code: i32,
    pub stdout: String,
}

fn args_echo(command: &Command) -> Value {
    match command {
        Command::Dims { group, n, genus } => json!({ "group": format!("{group:?}"), "n": n, "genus": genus }),
        Command::Curve { group, n, genus, input } => json!({
            "group": format!("{group:?}"),
            "n": n,
            "genus": genus,
            "input_path": input.as_ref().map(|p| p.display().to_string()),
        }),
        Command::Realform { form } => json!({ "form": form }),
        Command::Validate { input }
        | Command::Pushforward { input }
        | Command::Eigenline { input }
        | Command::CheckFixedpoint { input }
        | Command::Norm { input }
        | Command::PrymCheck { input } => json!({ "input_path": input.display().to_string() }),
        Command::VerifyAll { seed, mutate } => json!({ "seed": seed, "mutate": mutate.map(|_| "pfaffian-sign") }),
    }
}

pub fn run(cli: &Cli) -> Execution {
    let name = cli.command.name();
    let mut echo = args_echo(&cli.command);
    let (envelope, text, exit_code) = match dispatch(&cli.command) {
        Ok(outcome) => {
            if let Some(input) = outcome.input {
                echo["input"] = input;
            }
            let code = if outcome.verified { 0 } else { EXIT_VERIFICATION_FAILED };
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: name,
                inputs_echo: echo,
                result: outcome.result,
                warnings: outcome.warnings,
                error: None,
            };
            (env, outcome.text, code)
        }
        Err(e) => {
            let text = format!("error ({:?}): {e}", e.kind()).to_lowercase();
            (error_envelope(name, echo, &e), text, e.exit_code())
        }
    };
    let stdout = match cli.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(&envelope, &text),
    };
    Execution { exit_code, stdout }
}

fn error_envelope(command: &'static str, echo: Value, e: &CliError) -> Envelope {
    Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        inputs_echo: echo,
        result: Value::Null,
        warnings: Vec::new(),
        error: Some(ErrorObject {
            kind: e.kind(),
            message: e.to_string(),
        }),
    }
}

fn render_text(envelope: &Envelope, body: &str) -> String {
    let mut out = format!(
        "hitchin {} (schema {})\n{body}\n",
        envelope.command, envelope.schema_version
    );
    for w in &envelope.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}
