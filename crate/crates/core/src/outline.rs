//! Proof outlines as JSON: each node names a rule, a spec line, a program
//! and its premises.
//!
//! ```json
//! {"rule": "Parallel", "spec": "rely id guar top pre end(true) post end(true)",
//!  "program": "x := 1 || y := 2", "premises": [ ... ]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::StateSpace;
use crate::syntax::{parse_program, parse_spec};
use crate::verifier::{ProofNode, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutlineText {
    pub rule: Rule,
    pub spec: String,
    pub program: String,
    #[serde(default)]
    pub premises: Vec<OutlineText>,
}

pub fn parse_outline(json: &str) -> Result<OutlineText> {
    serde_json::from_str(json).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl OutlineText {
    /// Parses every node's spec and program against `space`.
    pub fn resolve(&self, space: &StateSpace) -> Result<ProofNode> {
        self.resolve_at(space, "root")
    }

    fn resolve_at(&self, space: &StateSpace, path: &str) -> Result<ProofNode> {
        let at = |e: Error| Error::Outline(format!("{path}: {e}"));
        let prog = parse_program(&self.program).map_err(at)?;
        let conclusion = parse_spec(&self.spec).map_err(at)?.quintuple(space, prog).map_err(at)?;
        if self.premises.len() != self.rule.arity() {
            return Err(Error::Outline(format!(
                "{path}: {} takes {} premises, got {}",
                self.rule,
                self.rule.arity(),
                self.premises.len()
            )));
        }
        let premises = self
            .premises
            .iter()
            .enumerate()
            .map(|(i, p)| p.resolve_at(space, &format!("{path}.{i}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProofNode::new(self.rule, conclusion, premises))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_a_leaf() {
        let s = StateSpace::new(&["x"], 3).unwrap();
        let o = parse_outline(r#"{"rule":"BruteForce","spec":"pre end(true) post end(x = 1)","program":"x := 1"}"#)
            .unwrap();
        let node = o.resolve(&s).unwrap();
        assert_eq!(node.rule, Rule::BruteForce);
        assert_eq!(node.conclusion.post.states.len(), 1);
    }

    #[test]
    fn arity_and_syntax_errors() {
        let s = StateSpace::new(&["x"], 3).unwrap();
        let o = parse_outline(r#"{"rule":"Weakening","spec":"pre end(true) post end(true)","program":"skip"}"#).unwrap();
        assert!(matches!(o.resolve(&s), Err(Error::Outline(_))));
        assert!(matches!(parse_outline("{\n\"rule\": 3}"), Err(Error::Syntax { line: 2, .. })));
        let bad = parse_outline(r#"{"rule":"Skip","spec":"pre end(y = 1) post end(true)","program":"skip"}"#).unwrap();
        assert!(bad.resolve(&s).is_err());
    }

    #[test]
    fn parallel_assignment_fixture() {
        use crate::automaton::GuaranteeMode;
        use crate::lang::Bound;
        use crate::report::Verdict;
        use crate::verifier::check_outline;
        let s = StateSpace::new(&["x", "y", "z"], 8).unwrap();
        let check = |src: &str| {
            let node = parse_outline(src).unwrap().resolve(&s).unwrap();
            check_outline(&s, &node, Bound::new(6).unwrap(), GuaranteeMode::Contextual).unwrap()
        };
        let ok = check(include_str!("../fixtures/par_assign_outline.json"));
        assert_eq!(ok.verdict, Verdict::Pass, "{ok:#?}");
        let bad = check(include_str!("../fixtures/par_assign_wrong_outline.json"));
        assert_eq!(bad.verdict, Verdict::Fail);
    }
}
