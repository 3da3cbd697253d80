//! Write a localized code to the text format and its JSON mirror, then
//! read both back.

use bacon_shor::codefile::{parse_text, write_text, CodeJson};
use bacon_shor::{localize, GbsCode};

fn main() -> bacon_shor::Result<()> {
    let local = localize(&GbsCode::build(&"101\n".parse()?)?)?;
    let text = write_text(local.code());
    print!("{text}");
    let back = parse_text(&text)?;
    assert_eq!(back.generators(), local.code().generators());

    let json = CodeJson::from_code(local.code(), Some(1));
    let s = serde_json::to_string_pretty(&json).expect("serializes");
    println!("{s}");
    let again: CodeJson = serde_json::from_str(&s).expect("parses");
    assert_eq!(again.to_code()?.logical_qubits(), 1);
    Ok(())
}
