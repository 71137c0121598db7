"""Persistence-based similarity analysis of 2D scalar-field corpora."""

from .analysis import DistanceMatrix, Embedding, classical_mds, distance_matrix, isomap, tsne
from .filtration import Filtration, SimplicialComplex, build_complex, lower_star_filtration
from .ingest import (
    LabeledRaster,
    ScalarGrid,
    load_idx,
    load_image_dir,
    sample_per_class,
    to_filtration_function,
    write_idx,
)
from .persistence import (
    PersistenceCycle,
    PersistenceDiagram,
    PersistencePair,
    ReducedMatrix,
    extract_pairs,
    filter_by_persistence,
    reduce,
    representative_cycles,
)
from .project import Project, ProjectConfig, ProjectStore, load_project, run_pipeline
from .vectorize import (
    PersistenceImage,
    SortedDiff,
    birth_persistence_transform,
    persistence_image,
    pixel_diff,
    weight,
)

__version__ = "0.1.0"
