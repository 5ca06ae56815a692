use std::fmt;
use std::path::Path;

use clap::Args;

use rosecover::cover::CoverError;
use rosecover::{CoverGraph, FiniteGroup, GroupFamily, HomologyBasis, QVector, Word};

/// Flags shared by every command that works on one cover.
#[derive(Debug, Clone, Args)]
pub struct CoverArgs {
    /// Builtin family (cyclic:5, elementary_abelian:2,2, dihedral:4,
    /// symmetric:3, trivial) or a path to a JSON multiplication table.
    #[arg(long)]
    pub group: String,
    /// Rank of the rose. Defaults to the number of images.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated petal images, as element indices or labels. Defaults
    /// to the family's standard generators padded with powers of the first.
    #[arg(long)]
    pub images: Option<String>,
}

/// A failure that maps to a process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl fmt::Display) -> Self {
        Failure { code, message: message.to_string() }
    }

    pub fn config(message: impl fmt::Display) -> Self {
        Failure::new(2, message)
    }
}

pub type CliResult = Result<(), Failure>;

pub struct LoadedCover {
    pub cover: CoverGraph,
    pub basis: HomologyBasis,
}

fn load_group(source: &str) -> Result<(FiniteGroup, Option<GroupFamily>), Failure> {
    if let Ok(family) = source.parse::<GroupFamily>() {
        return family.build().map(|g| (g, Some(family))).map_err(Failure::config);
    }
    let path = Path::new(source);
    if !path.is_file() {
        return Err(Failure::config(format!("unknown group '{source}': not a builtin family or a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::config(format!("{source}: {e}")))?;
    let group = serde_json::from_str(&text).map_err(|e| Failure::config(format!("{source}: {e}")))?;
    Ok((group, None))
}

impl CoverArgs {
    /// Validates every flag, then builds the cover. Exit 2 for a bad
    /// configuration, 3 when the images do not generate the group.
    pub fn load(&self) -> Result<LoadedCover, Failure> {
        let (group, family) = load_group(&self.group)?;
        let images: Vec<usize> = match &self.images {
            Some(list) => list
                .split(',')
                .map(|tok| group.parse_element(tok))
                .collect::<Result<_, _>>()
                .map_err(Failure::config)?,
            None => {
                let family = family.ok_or_else(|| Failure::config("--images is required for a JSON group"))?;
                let n = self.n.ok_or_else(|| Failure::config("give --n or --images"))?;
                rosecover::battery::default_images(&family, n)
                    .ok_or_else(|| Failure::config(format!("{family} needs more than {n} petals")))?
            }
        };
        if let Some(n) = self.n {
            if n != images.len() {
                return Err(Failure::config(format!("--n {n} but {} images given", images.len())));
            }
        }
        let cover = CoverGraph::from_parts(group, images).map_err(|e| match e {
            CoverError::Disconnected => Failure::new(3, e),
            e => Failure::config(e),
        })?;
        let basis = HomologyBasis::new(&cover);
        Ok(LoadedCover { cover, basis })
    }
}

/// Coordinates "p/q,..." in the fundamental-cycle basis.
pub fn parse_vector(text: &str, rank: usize) -> Result<QVector, Failure> {
    let coords = text
        .split(',')
        .map(rosecover::linalg::parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::config)?;
    if coords.len() != rank {
        return Err(Failure::config(format!("vector has {} coordinates, H_1 has rank {rank}", coords.len())));
    }
    Ok(QVector(coords))
}

/// Class of the lift of `word` at the identity vertex; the lift must close up.
pub fn parse_vector_word(text: &str, loaded: &LoadedCover) -> Result<QVector, Failure> {
    let word: Word = text.parse().map_err(Failure::config)?;
    word.check_rank(loaded.cover.rank()).map_err(Failure::config)?;
    let path = loaded.cover.lift_word(&word, FiniteGroup::IDENTITY);
    loaded
        .basis
        .path_class(&loaded.cover, &path)
        .map_err(|_| Failure::config(format!("the lift of {word} at the identity is not closed")))
}
