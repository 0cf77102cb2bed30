//! Running the command-line interface in-process and consuming its
//! machine-readable output.

use edgegreen::cli::{execute, OutputRecord};

fn main() {
    let run = execute(["edgegreen", "theorem1", "--edge", "ee", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(&run.stdout).expect("json");
    println!("exit code {}, status {:?}, {} rows", run.code, rec.status, rec.rows.len());
    let (d, p) = (rec.column("derived").expect("column"), rec.column("printed").expect("column"));
    for row in rec.rows.iter().filter(|r| r[1] == "substituted" && r[2] == "0") {
        println!("{} {}: derived {} printed {}", row[3], row[4], row[d], row[p]);
    }
    print!("{}", execute(["edgegreen", "verify", "--case", "cusp", "--format", "csv"]).stdout);
}
