from .corpus import CORPUS_LIMIT, corpus_graphs, gen_corpus
from .expanders import gen_expander_bridge, random_expander
from .instance import FamilyInstance, all_present, derive_seed, flow_truth, path_truth
from .lower_bound import decode_first_bit, gen_lower_bound_family, index_bits
from .paths import gen_parallel_paths, gen_path, gen_unique_path_clutter
from .registry import FAMILIES, FamilySpec, load_instance, make_family, resolve_instance
from .series_parallel import gen_series_parallel, sp_instance

__all__ = (
    "CORPUS_LIMIT",
    "FAMILIES",
    "FamilyInstance",
    "FamilySpec",
    "all_present",
    "corpus_graphs",
    "decode_first_bit",
    "derive_seed",
    "flow_truth",
    "gen_corpus",
    "gen_expander_bridge",
    "gen_lower_bound_family",
    "gen_parallel_paths",
    "gen_path",
    "gen_series_parallel",
    "gen_unique_path_clutter",
    "index_bits",
    "load_instance",
    "make_family",
    "path_truth",
    "random_expander",
    "resolve_instance",
    "sp_instance",
)
