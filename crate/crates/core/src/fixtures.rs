//! Bundled example meshes with their expected reports.

pub struct Fixture {
    pub name: &'static str,
    pub mesh: &'static str,
    /// Degree range the expected report was produced over.
    pub degrees: &'static str,
    /// Machine report, oracle included.
    pub expected: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            mesh: include_str!(concat!("../fixtures/", $name, "/mesh.json")),
            degrees: include_str!(concat!("../fixtures/", $name, "/degrees")),
            expected: include_str!(concat!("../fixtures/", $name, "/expected.json")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("test-1"),
    fixture!("test-2"),
    fixture!("test-3"),
    fixture!("new-relations-a"),
    fixture!("new-relations-b"),
    fixture!("counterexample"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn mesh_text(name: &str) -> Option<&'static str> {
    get(name).map(|f| f.mesh)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

/// Parsed and analysed fixture.
pub fn load(name: &str) -> crate::Result<crate::Analysis> {
    let f = get(name).ok_or_else(|| crate::Error::Parse {
        location: "fixture".into(),
        message: format!("unknown fixture {name:?}"),
    })?;
    crate::io::parse_mesh_str(f.mesh)?.analysis()
}
