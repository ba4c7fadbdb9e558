//! Exhaustive automorphism oracle for small graphs.

use crate::error::AutError;
use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};

/// Largest graph the oracle accepts.
pub const BRUTE_FORCE_MAX: usize = 10;

/// All automorphisms of `g`, found by extending partial vertex maps one
/// vertex at a time and discarding a prefix as soon as it breaks adjacency.
/// Shares no code with the refinement search.
pub fn brute_force_aut(g: &Graph) -> Result<PermGroup, AutError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX {
        return Err(AutError::TooLarge { n, limit: BRUTE_FORCE_MAX });
    }
    let mut found = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(g, &mut image, &mut used, &mut found);
    // identity first, matching the closure order of generated groups
    found.sort();
    Ok(PermGroup::from_closed_elements(n, found))
}

fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut [bool], found: &mut Vec<Permutation>) {
    let n = g.vertex_count();
    let v = image.len();
    if v == n {
        found.push(Permutation::from_images_unchecked(image.clone()));
        return;
    }
    for candidate in 0..n {
        if used[candidate] {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], candidate));
        if !consistent {
            continue;
        }
        used[candidate] = true;
        image.push(candidate);
        extend(g, image, used, found);
        image.pop();
        used[candidate] = false;
    }
}
