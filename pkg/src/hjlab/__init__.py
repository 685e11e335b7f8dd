"""hjlab: semigroup retraction structures, ultrafilter identities on finite
carriers, and monochromatic-witness search (combinatorial lines, arithmetic
progressions) at desk scale."""

__version__ = "0.1.0"

from .semigroups import (
    CheckResult,
    FiniteSemigroup,
    NiceSubsemigroupView,
    Retraction,
    RetractionFamily,
    cyclic_semigroup,
    flag_index,
    flag_semigroup,
    is_nice_subsemigroup,
    max_semigroup,
    product,
    validate_finite_semigroup,
    validate_retraction,
)
from .words import (
    Substitution,
    WordSemigroup,
    format_word,
    parse_word,
    substitute,
    substitution_family,
    variable,
)
from .tableio import (
    format_semigroup_file,
    parse_semigroup_file,
    parse_semigroup_text,
)
from .ultra import (
    Carrier,
    FipResult,
    PrincipalUltrafilter,
    ProductCarrier,
    SubsetQuery,
    build_agreement_set,
    build_agreement_set_window,
    check_agreement_equivalence,
    check_fip,
    check_image_law,
    check_lemma2_equivalence,
    check_product_law,
    check_prop_tensor,
    check_tensor_assoc,
    check_tensor_power_law,
    check_tensor_power_law_multi,
    find_agreement_ultrafilter,
    image,
    member,
    fold_product_map,
    psi_map,
    tensor_member,
    tensor_member_left,
    translate_preimage,
    uf_power,
    uf_product,
    uf_tensor,
)
from .corpus import (
    CorpusEntry,
    CorpusReport,
    compose,
    enumerate_endomorphisms,
    generate_corpus,
    mulclose,
    sweep_semigroups,
    sweep_tensor_power,
    transformation_semigroup,
)
from .instances import (
    ApResidueColoring,
    CombinatorialLine,
    GallaiEncoding,
    ModSumColoring,
    PullbackColoring,
    TableColoring,
    VdwEncoding,
    decode_word,
    encode_word,
    enumerate_lines,
    line_count,
    parse_coloring_spec,
)
from .search import (
    BUDGET,
    ColoringResult,
    HypergraphSolver,
    LineHypergraph,
    NumberResult,
    SAT,
    Symmetry,
    UNSAT,
    ViaHjOutcome,
    WitnessOutcome,
    ap_edges,
    canonical_prune,
    find_ap_via_words,
    finite_witness_search,
    hj_check,
    hj_number,
    hj_symmetry,
    vdw_check,
    vdw_number,
    vdw_symmetry,
    verify_proper_coloring,
    word_witness_search,
)
from .certificates import (
    HjColoringCertificate,
    VdwColoringCertificate,
    WitnessFiniteCertificate,
    WitnessWordsCertificate,
    finite_witness_certificate,
    hj_coloring_certificate,
    load_certificate,
    parse_certificate,
    render_certificate,
    save_certificate,
    vdw_coloring_certificate,
    verify_certificate,
    verify_certificate_text,
    words_witness_certificate,
)
from . import errors
