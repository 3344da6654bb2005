// SPDX-License-Identifier: Apache-2.0

use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, ValueEnum};
use polyadic::session::{Format, Options, Session};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

/// Workbench for polyadic equality set algebras over the weak rational space.
///
/// With a COMMAND, runs it once. With --script, runs the file line by line.
/// Otherwise reads commands from standard input, interactively on a terminal.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Coordinates 0..N used by closure and search.
    #[arg(long, default_value_t = 4)]
    window: usize,
    /// Bound on sampled numerators and denominators.
    #[arg(long, default_value_t = 3)]
    coeff_height: i64,
    /// Search depth.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// A single command, for example `eq "c{0}(a(0))" 1`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    command: Vec<String>,
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let mut session = Session::new(Options {
        window: cli.window,
        coeff_height: cli.coeff_height,
        depth: cli.depth,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Records => Format::Records,
        },
    });
    session.exe = std::env::current_exe().ok();

    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", session.header())?;
    let mut ok = true;
    let mut run = |line: &str, out: &mut dyn Write| -> anyhow::Result<()> {
        let result = session.run_line(line);
        ok &= result.ok;
        out.write_all(result.text.as_bytes())?;
        out.flush()?;
        Ok(())
    };

    if !cli.command.is_empty() {
        let line = shlex::try_join(cli.command.iter().map(String::as_str))
            .context("command contains a NUL byte")?;
        run(&line, &mut out)?;
    } else if let Some(path) = &cli.script {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for line in text.lines() {
            run(line, &mut out)?;
        }
    } else {
        let stdin = std::io::stdin();
        let interactive = stdin.is_terminal();
        let mut lines = stdin.lock().lines();
        loop {
            if interactive {
                write!(out, "> ")?;
                out.flush()?;
            }
            let Some(line) = lines.next() else { break };
            let line = line?;
            if interactive && matches!(line.trim(), "quit" | "exit") {
                break;
            }
            run(&line, &mut out)?;
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
