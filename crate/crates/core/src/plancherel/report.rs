use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub identity: String,
    pub group: String,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
    pub ratio: String,
    pub sign: Option<i8>,
    pub verdict: bool,
}

fn escape(s: &str) -> String {
    s.replace('_', "\\_").replace('#', "\\#").replace('%', "\\%").replace('&', "\\&")
}

/// A longtable with one row per record.
pub fn to_latex(records: &[Record]) -> String {
    let mut s = String::from("\\begin{longtable}{lllll}\n\\toprule\nidentity & group & point & ratio & verdict \\\\\n\\midrule\n");
    for r in records {
        s.push_str(&format!(
            "{} & {} & ${}$ & ${}$ & {} \\\\\n",
            escape(&r.identity),
            escape(&r.group),
            r.point,
            r.ratio,
            if r.verdict { "pass" } else { "fail" }
        ));
    }
    s.push_str("\\bottomrule\n\\end{longtable}\n");
    s
}
