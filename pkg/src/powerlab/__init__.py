"""Finite-scale laboratory for comparing the computational power of
models of computation: recursion terms, machine models, encodings
between domains, and an engine that verifies or refutes simulation
claims on concrete samples."""

from powerlab.core import (
    BuiltinMap,
    Converged,
    Diverged,
    Domain,
    DomainMismatch,
    Encoding,
    FuelExhausted,
    IdentityEncoding,
    InvalidMap,
    Model,
    PartialMap,
    TableEncoding,
    TableMap,
    apply,
    apply_with_cost,
    compose_encodings,
    encode_outcome,
    identity_map,
    pullback,
    pushforward,
    pushforward_model,
)
from powerlab.recdsl import (
    Ack,
    ArityError,
    Comp,
    ConstK,
    Id,
    Mu,
    ParseError,
    PrimRec,
    Proj,
    S,
    Term,
    TermClass,
    TermMap,
    Z,
    ackermann,
    classify,
    compose_unary,
    eval_term,
    parse_term,
    term_map,
    to_text,
)
from powerlab.terms import rec_suite_model, standard_suite
from powerlab.machines import (
    BitsEncoding,
    CMProgram,
    CompileError,
    ProgramError,
    TMProgram,
    bits_to_nat,
    cm_map,
    compile_rec_to_cm,
    nat_to_bits,
    parse_cm,
    parse_tm,
    render_cm,
    render_tm,
    run_cm,
    run_tm,
    tm_map,
    tm_witness_models,
)
from powerlab.constructions import (
    GodelEncoding,
    NarrownessReport,
    OracleH,
    StripeEncoding,
    TriPiEncoding,
    diag_h,
    godel_decode,
    godel_encode,
    narrowness,
    oracle_parity,
    oracle_pseudorandom,
    oracle_zeros,
    re_family,
    re_models,
    stripe_encoding,
    stripe_family,
    stripe_model,
    stripe_model_member,
    tri_f,
    tri_g,
    tri_models,
    tri_pi,
    tri_pi_inverse,
)
from powerlab.simcheck import (
    Agreement,
    SimReport,
    TestPlan,
    Verdict,
    check_closure,
    check_equivalence,
    check_pullback_law,
    check_simulation,
    maps_agree,
    plan_over_range,
    probe_encodings,
)

__all__ = [name for name in dir() if not name.startswith("_")]
