"""Exact power domination, zero forcing and failed-partition computations on
small graphs, with certificates that can be rechecked independently."""

from .errors import CapExceeded, GraphFormatError, NotATreeError, PartitionError, PowerDomError
from .graph import (
    Graph,
    ProductLabeling,
    cartesian_product,
    component_masks,
    components,
    induced_subgraph,
    is_connected,
    is_spider,
    is_tree,
    parse_edge_list,
    parse_graph6,
    parse_graph_json,
    remove_vertices,
    write_graph6,
)
from .observe import (
    ObservationState,
    domination_step,
    is_dominating_set,
    is_power_dominating_set,
    is_zero_forcing_set,
    power_dominate,
    propagate,
    zero_force,
)
from .solve import (
    SearchBudget,
    SearchWitness,
    domination_number,
    power_domination_number,
    spider_cover_number,
    zero_forcing_number,
)
from .partition import (
    FailedPartitionCertificate,
    VertexPartition,
    check_obs5,
    compute_ell,
    is_failed_partition,
    is_failed_pd_partition,
    is_failed_zf_partition,
    product_failed_partition,
)
from .treepart import Condition1Report, check_condition1, tree_condition1_partition, verify_condition1_partition
from .trees import enumerate_trees
from .bounds import (
    BoundReport,
    check_product_bounds,
    check_theorem1,
    check_theorem6,
    cutset_bounds,
    generalized_upper,
    vizing_tree_check,
)
from .families import (
    FamilyInstance,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_doublestar,
    gen_family_F,
    gen_figure1,
    gen_figure2,
    gen_gms,
    gen_necklace,
    gen_path,
    gen_section4_example,
    gen_spider,
    gen_star,
)

__version__ = "0.1.0"
