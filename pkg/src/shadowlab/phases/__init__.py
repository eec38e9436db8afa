"""Phase-classification machinery: fixed points, symmetric/local random
circuits, string order, surface-code preparation, cluster-Ising ED."""

from .cluster_ising import (
    ClusterIsingSpec,
    cluster_ising_ground,
    dense_hamiltonian,
    ground_space_overlap,
)
from .dataset import (
    PhaseDataset,
    build_phase_dataset,
    load_dataset,
    save_dataset,
    spt_dataset,
    topo_dataset,
)
from .fixed_points import (
    cluster_circuit,
    cluster_stabilizer,
    prepare_cluster,
    prepare_product_x,
    sop,
)
from .lu import local_random_circuit
from .surface import (
    SurfaceCodeLayout,
    prepare_logical_zero,
    stabilizer_strings,
    surface_layout,
)
from .symmetric import SYMMETRY_SETS, symmetric_random_circuit, symmetry_generators

__all__ = [
    "ClusterIsingSpec", "cluster_ising_ground", "dense_hamiltonian",
    "ground_space_overlap", "PhaseDataset", "build_phase_dataset",
    "load_dataset", "save_dataset", "spt_dataset", "topo_dataset",
    "cluster_circuit", "cluster_stabilizer", "prepare_cluster",
    "prepare_product_x", "sop", "local_random_circuit", "SurfaceCodeLayout",
    "prepare_logical_zero", "stabilizer_strings", "surface_layout",
    "SYMMETRY_SETS", "symmetric_random_circuit", "symmetry_generators",
]
