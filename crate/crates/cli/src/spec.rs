//! Graph specs: `gp n k`, `igraph n j k`, or a path to an edge-list file.

use std::fs::File;
use std::io::BufReader;

use gpcops::{build_gp, build_igraph, GpParams, Graph, IGraphParams};

use crate::CliError;

pub fn parse_graph(tokens: &[String]) -> Result<Graph, CliError> {
    let Some(head) = tokens.first() else {
        return Err(CliError::Parse(
            "missing graph spec (gp n k | igraph n j k | file)".into(),
        ));
    };
    match head.as_str() {
        "gp" => {
            let [n, k] = numbers::<2>(tokens)?;
            let p = GpParams::new(n, k).map_err(|e| CliError::Parse(format!("gp {n} {k}: {e}")))?;
            build_gp(p).map_err(|e| CliError::Parse(e.to_string()))
        }
        "igraph" => {
            let [n, j, k] = numbers::<3>(tokens)?;
            let p = IGraphParams::new(n, j, k)
                .map_err(|e| CliError::Parse(format!("igraph {n} {j} {k}: {e}")))?;
            if !p.is_connected() {
                return Err(CliError::Precondition(format!("{p} is disconnected")));
            }
            build_igraph(p).map_err(|e| CliError::Parse(e.to_string()))
        }
        path => {
            if tokens.len() > 1 {
                return Err(CliError::Parse(format!(
                    "token 2: unexpected '{}' after file path",
                    tokens[1]
                )));
            }
            let file = File::open(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
            Graph::parse_edge_list(BufReader::new(file))
                .map_err(|e| CliError::Parse(format!("{path}: {e}")))
        }
    }
}

fn numbers<const N: usize>(tokens: &[String]) -> Result<[usize; N], CliError> {
    if tokens.len() != N + 1 {
        return Err(CliError::Parse(format!(
            "'{}' takes {N} integer arguments, got {}",
            tokens[0],
            tokens.len() - 1
        )));
    }
    let mut out = [0; N];
    for (i, t) in tokens[1..].iter().enumerate() {
        out[i] = t.parse().map_err(|_| {
            CliError::Parse(format!(
                "token {}: expected a non-negative integer, got '{t}'",
                i + 2
            ))
        })?;
    }
    Ok(out)
}

/// Comma-separated vertex ids.
pub fn parse_vertices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim().parse().map_err(|_| {
                CliError::Parse(format!("item {}: expected a vertex id, got '{t}'", i + 1))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn family_specs() {
        assert_eq!(parse_graph(&toks("gp 6 2")).unwrap().n_vertices(), 12);
        assert_eq!(parse_graph(&toks("igraph 7 3 2")).unwrap().n_vertices(), 14);
    }

    #[test]
    fn errors_name_the_token() {
        let CliError::Parse(msg) = parse_graph(&toks("gp 6 x")).unwrap_err() else {
            panic!()
        };
        assert!(msg.contains("token 3"), "{msg}");
        assert!(matches!(
            parse_graph(&toks("gp 6")),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            parse_graph(&toks("gp 6 3")),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            parse_graph(&toks("igraph 6 2 2")),
            Err(CliError::Precondition(_))
        ));
        assert!(matches!(parse_graph(&[]), Err(CliError::Parse(_))));
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertices("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_vertices("1,a").is_err());
    }
}
