//! Named constructions with their known exact counts.

use crate::error::GraphError;
use crate::graph::{add_cone_vertex, delete_progression, make_power_circulant, make_residue_circulant, Graph};
use crate::triangles::triangle_count;

/// Neighbours of the extra vertex added to L(785, 53) to obtain G_786.
pub const G786_CONE: [usize; 60] = [
    0, 1, 3, 4, 6, 7, 9, 10, 12, 13, 15, 16, //
    18, 19, 21, 22, 24, 25, 27, 28, 30, 31, 33, 34, //
    36, 37, 39, 40, 42, 43, 45, 46, 48, 49, 51, 52, //
    54, 55, 57, 58, 60, 61, 63, 66, 69, 201, 204, 207, //
    210, 213, 216, 219, 222, 225, 416, 419, 422, 630, 642, 645,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// G(n, r)
    Residue { n: usize, r: u32 },
    /// L(n, s)
    Power { n: usize, s: usize },
    /// G(n, r) minus C(d, k)
    ResidueMinusProgression { n: usize, r: u32, d: usize, k: usize },
    /// L(n, s) plus one vertex joined to [`G786_CONE`]
    PowerPlusCone { n: usize, s: usize },
}

/// Exact counts a construction must reproduce.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub triangles: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedConstruction {
    pub name: &'static str,
    pub recipe: Recipe,
    pub expected: Expected,
}

const fn exp(vertices: Option<usize>, edges: Option<usize>, triangles: Option<usize>) -> Expected {
    Expected { vertices, edges, triangles }
}

pub const REGISTRY: &[NamedConstruction] = &[
    NamedConstruction { name: "g941", recipe: Recipe::Residue { n: 941, r: 5 }, expected: exp(Some(941), None, Some(707_632)) },
    NamedConstruction {
        name: "g860",
        recipe: Recipe::ResidueMinusProgression { n: 941, r: 5, d: 2, k: 81 },
        expected: exp(Some(860), Some(73_981), Some(542_514)),
    },
    NamedConstruction {
        name: "g786",
        recipe: Recipe::PowerPlusCone { n: 785, s: 53 },
        expected: exp(Some(786), Some(61_290), Some(428_881)),
    },
    NamedConstruction { name: "l127_5", recipe: Recipe::Power { n: 127, s: 5 }, expected: exp(Some(127), None, Some(9_779)) },
    NamedConstruction { name: "l457_6", recipe: Recipe::Power { n: 457, s: 6 }, expected: exp(Some(457), None, Some(173_660)) },
    NamedConstruction { name: "l761_3", recipe: Recipe::Power { n: 761, s: 3 }, expected: exp(Some(761), None, Some(347_016)) },
    NamedConstruction { name: "l785_53", recipe: Recipe::Power { n: 785, s: 53 }, expected: exp(Some(785), None, Some(428_610)) },
    NamedConstruction { name: "l17_2", recipe: Recipe::Power { n: 17, s: 2 }, expected: exp(Some(17), Some(68), None) },
    NamedConstruction { name: "l61_8", recipe: Recipe::Power { n: 61, s: 8 }, expected: exp(Some(61), None, None) },
    NamedConstruction { name: "l79_12", recipe: Recipe::Power { n: 79, s: 12 }, expected: exp(Some(79), None, None) },
    NamedConstruction { name: "l421_7", recipe: Recipe::Power { n: 421, s: 7 }, expected: exp(Some(421), None, None) },
    NamedConstruction { name: "l631_24", recipe: Recipe::Power { n: 631, s: 24 }, expected: exp(Some(631), None, None) },
];

pub fn registry_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|c| c.name)
}

impl NamedConstruction {
    /// Builds the graph without checking the expected counts.
    pub fn build_unchecked(&self) -> Result<Graph, GraphError> {
        match self.recipe {
            Recipe::Residue { n, r } => make_residue_circulant(n, r),
            Recipe::Power { n, s } => make_power_circulant(n, s),
            Recipe::ResidueMinusProgression { n, r, d, k } => Ok(delete_progression(&make_residue_circulant(n, r)?, d, k)?.graph),
            Recipe::PowerPlusCone { n, s } => add_cone_vertex(&make_power_circulant(n, s)?, &G786_CONE),
        }
    }

    /// Builds the graph and checks every expected count.
    pub fn build(&self) -> Result<Graph, GraphError> {
        let g = self.build_unchecked()?;
        let check = |what: &str, want: Option<usize>, got: usize| match want {
            Some(w) if w != got => Err(GraphError::InvalidParameter(format!("{}: expected {w} {what}, constructed {got}", self.name))),
            _ => Ok(()),
        };
        check("vertices", self.expected.vertices, g.vertex_count())?;
        check("edges", self.expected.edges, g.edge_count())?;
        if self.expected.triangles.is_some() {
            check("triangles", self.expected.triangles, triangle_count(&g))?;
        }
        Ok(g)
    }
}

pub fn find_named(name: &str) -> Option<&'static NamedConstruction> {
    REGISTRY.iter().find(|c| c.name == name)
}

/// Builds a registered construction, asserting its expected counts.
pub fn lookup_named(name: &str) -> Result<Graph, GraphError> {
    find_named(name)
        .ok_or_else(|| GraphError::InvalidParameter(format!("unknown construction '{name}'")))?
        .build()
}

/// Parses `G(n,r)`, `L(n,s)` style recipes, also accepting `residue:n,r`
/// and `power:n,s`.
pub fn parse_recipe(spec: &str) -> Option<Recipe> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, args) = if let Some(rest) = s.strip_prefix("G(").or_else(|| s.strip_prefix("g(")) {
        ('G', rest.strip_suffix(')')?)
    } else if let Some(rest) = s.strip_prefix("L(").or_else(|| s.strip_prefix("l(")) {
        ('L', rest.strip_suffix(')')?)
    } else if let Some(rest) = s.strip_prefix("residue:") {
        ('G', rest)
    } else {
        ('L', s.strip_prefix("power:")?)
    };
    let mut it = args.split(',').map(|p| p.parse::<usize>());
    let a = it.next()?.ok()?;
    let b = it.next()?.ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(match kind {
        'G' => Recipe::Residue { n: a, r: u32::try_from(b).ok()? },
        _ => Recipe::Power { n: a, s: b },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_list_is_sorted_and_distinct() {
        assert!(G786_CONE.windows(2).all(|w| w[0] < w[1]));
        assert!(G786_CONE.iter().all(|&v| v < 785));
    }

    #[test]
    fn small_registry_entries() {
        let g = lookup_named("l17_2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (17, 68));
        assert!(lookup_named("nope").is_err());
    }

    #[test]
    fn recipes() {
        assert_eq!(parse_recipe("L(17, 2)"), Some(Recipe::Power { n: 17, s: 2 }));
        assert_eq!(parse_recipe("G(941,5)"), Some(Recipe::Residue { n: 941, r: 5 }));
        assert_eq!(parse_recipe("power:13,5"), Some(Recipe::Power { n: 13, s: 5 }));
        assert_eq!(parse_recipe("L(1,2,3)"), None);
        assert_eq!(parse_recipe("K(5)"), None);
    }
}
