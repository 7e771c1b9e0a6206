mod args;
mod commands;
mod record;

use clap::Parser;

use args::{Cli, Format};
use record::{OutputRecord, Status};

fn main() {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match commands::run(&cli, argv.clone()) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", to_json(&out.record)),
                Format::Csv => print!("{}", out.csv.unwrap_or_default()),
            }
            for m in &out.record.messages {
                eprintln!("warning: {m}");
            }
            out.record.status.exit_code()
        }
        Err(e) => {
            if cli.format == Format::Json {
                let record = OutputRecord {
                    command: argv,
                    inputs: Vec::new(),
                    results: serde_json::Value::Null,
                    status: Status::Error,
                    messages: vec![e.to_string()],
                };
                println!("{}", to_json(&record));
            }
            eprintln!("error: {e}");
            Status::Error.exit_code()
        }
    };
    std::process::exit(code);
}

fn to_json(record: &OutputRecord) -> String {
    serde_json::to_string_pretty(record).expect("records serialize")
}
