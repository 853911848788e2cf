"""Source text of the builtin theories.

The multi-sorted theories build on each other; each source below is the
concatenation of its parent's declarations and its own, so every entry is a
self-contained theory file.
"""

PCM = """\
# Partial commutative monoids: multiplication and unit may both be undefined.
op m : A * A -> A ;
op e : -> A ;
eq assoc : (m * id) ; m = (id * m) ; m ;
eq comm : sw ; m = m ;
leq unit : (e * id) ; m <= id ;
"""

TOTAL_CMON = PCM + """\
eq m_total : m ; dl = dl * dl ;
eq e_total : e ; dl = empty ;
"""

SETOID = """\
# A binary predicate whose domain of definition is an equivalence relation.
op R : A * A -> 0 ;
eq sym : sw ; R = R ;
eq refl : cp ; R = dl ;
leq trans : (id * cp * id) ; (R * R) <= (id * dl * id) ; R ;
"""

PCA = """\
# Partial combinatory algebras: application is partial, k and s are elements.
op app : A * A -> A ;
op k : -> A ;
op s : -> A ;
eq k_total : k ; dl = empty ;
eq s_total : s ; dl = empty ;
eq s_defined : (s * id * id) ; (app * id) ; app ; dl = dl * dl ;
eq k_rule : (k * id * id) ; (app * id) ; app = id * dl ;
eq s_rule : (s * id * id * id) ; (app * id * id) ; (app * id) ; app = (id * id * cp) ; (id * sw * id) ; (app * app) ; app ;
"""

PAIRING = """\
# Pairing with its two projections; the equation makes pairing a section.
op pair : A * A -> A ;
op fst : A -> A ;
op snd : A -> A ;
eq section : pair ; cp ; (fst * snd) = id * id ;
"""

CATEGORY = """\
# Small categories: O objects, A arrows, composition written diagrammatically.
sort O A ;
op dom : A -> O ;
op cod : A -> O ;
op idn : O -> A ;
op comp : A * A -> A ;
eq dom_total : dom ; dl[O] = dl[A] ;
eq cod_total : cod ; dl[O] = dl[A] ;
eq idn_total : idn ; dl[A] = dl[O] ;
eq idn_dom : idn ; dom = id[O] ;
eq idn_cod : idn ; cod = id[O] ;
eq comp_defined : comp ; dl[A] = (cod * dom) ; mu[O] ; dl[O] ;
leq comp_dom : comp ; dom <= (id[A] * dl[A]) ; dom ;
leq comp_cod : comp ; cod <= (dl[A] * id[A]) ; cod ;
eq unit_left : cp[A] ; ((dom ; idn) * id[A]) ; comp = id[A] ;
eq unit_right : cp[A] ; (id[A] * (cod ; idn)) ; comp = id[A] ;
eq assoc : (comp * id[A]) ; comp = (id[A] * comp) ; comp ;
"""

STRICT_MONCAT = CATEGORY + """\
# Strict monoidal structure.
op tens_o : O * O -> O ;
op unit_o : -> O ;
op tens_a : A * A -> A ;
eq tens_o_total : tens_o ; dl[O] = dl[O] * dl[O] ;
eq unit_o_total : unit_o ; dl[O] = empty ;
eq tens_a_total : tens_a ; dl[A] = dl[A] * dl[A] ;
eq tens_o_assoc : (tens_o * id[O]) ; tens_o = (id[O] * tens_o) ; tens_o ;
eq tens_a_assoc : (tens_a * id[A]) ; tens_a = (id[A] * tens_a) ; tens_a ;
eq unit_o_left : (unit_o * id[O]) ; tens_o = id[O] ;
eq unit_o_right : (id[O] * unit_o) ; tens_o = id[O] ;
eq unit_a_left : ((unit_o ; idn) * id[A]) ; tens_a = id[A] ;
eq unit_a_right : (id[A] * (unit_o ; idn)) ; tens_a = id[A] ;
eq tens_dom : tens_a ; dom = (dom * dom) ; tens_o ;
eq tens_cod : tens_a ; cod = (cod * cod) ; tens_o ;
eq tens_idn : (idn * idn) ; tens_a = tens_o ; idn ;
leq interchange : (comp * comp) ; tens_a <= (id[A] * sw[A] * id[A]) ; (tens_a * tens_a) ; comp ;
"""

SYMM_MONCAT = STRICT_MONCAT + """\
# Symmetry.
op sigma : O * O -> A ;
eq sigma_total : sigma ; dl[A] = dl[O] * dl[O] ;
eq sigma_dom : sigma ; dom = tens_o ;
eq sigma_cod : sigma ; cod = sw[O] ; tens_o ;
eq sigma_involutive : (cp[O] * cp[O]) ; (id[O] * sw[O] * id[O]) ; (sigma * (sw[O] ; sigma)) ; comp = tens_o ; idn ;
eq sigma_natural : (cp[A] * cp[A]) ; (id[A] * sw[A] * id[A]) ; (tens_a * ((cod * cod) ; sigma)) ; comp = (cp[A] * cp[A]) ; (id[A] * sw[A] * id[A]) ; (((dom * dom) ; sigma) * (sw[A] ; tens_a)) ; comp ;
eq sigma_hexagon : (id[O] * tens_o) ; sigma = (cp[O] * cp[O] * cp[O]) ; (id[O] * sw[O] * id[O] * id[O] * id[O]) ; (id[O] * id[O] * id[O] * sw[O] * id[O]) ; (id[O] * id[O] * sw[O] * id[O] * id[O]) ; (id[O] * id[O] * id[O] * sw[O] * id[O]) ; (((sigma * idn) ; tens_a) * ((idn * sigma) ; tens_a)) ; comp ;
"""

CR_CAT = SYMM_MONCAT + """\
# Copy and discard on every object, coherent with the tensor; copying is natural.
op delta : O -> A ;
op eps : O -> A ;
eq delta_total : delta ; dl[A] = dl[O] ;
eq eps_total : eps ; dl[A] = dl[O] ;
eq delta_dom : delta ; dom = id[O] ;
eq delta_cod : delta ; cod = cp[O] ; tens_o ;
eq eps_dom : eps ; dom = id[O] ;
eq eps_cod : eps ; cod = dl[O] ; unit_o ;
eq delta_unit : unit_o ; delta = unit_o ; idn ;
eq eps_unit : unit_o ; eps = unit_o ; idn ;
eq eps_tensor : tens_o ; eps = (eps * eps) ; tens_a ;
eq delta_tensor : tens_o ; delta = ((cp[O] ; (id[O] * cp[O])) * (cp[O] ; (id[O] * cp[O]))) ; (id[O] * id[O] * sw[O] * id[O] * id[O]) ; (id[O] * sw[O] * id[O] * id[O] * id[O]) ; (((delta * delta) ; tens_a) * ((idn * sigma * idn) ; (tens_a * id[A]) ; tens_a)) ; comp ;
eq delta_coassoc : cp[O] ; (cp[O] * id[O]) ; (delta * ((delta * idn) ; tens_a)) ; comp = cp[O] ; (cp[O] * id[O]) ; (delta * ((idn * delta) ; tens_a)) ; comp ;
eq delta_cocomm : cp[O] ; (delta * (cp[O] ; sigma)) ; comp = delta ;
eq delta_counit : cp[O] ; (delta * (cp[O] ; (eps * idn) ; tens_a)) ; comp = idn ;
eq delta_natural : cp[A] ; (id[A] * (cod ; delta)) ; comp = cp[A] ; (cp[A] * id[A]) ; ((dom ; delta) * tens_a) ; comp ;
"""

DCR_CAT = CR_CAT + """\
# A merge on every object, partial inverse to copying.
op merge : O -> A ;
eq merge_total : merge ; dl[A] = dl[O] ;
eq merge_dom : merge ; dom = cp[O] ; tens_o ;
eq merge_cod : merge ; cod = id[O] ;
eq merge_special : cp[O] ; (delta * merge) ; comp = idn ;
eq merge_frobenius : cp[O] ; (merge * delta) ; comp = cp[O] ; (cp[O] * cp[O]) ; (((idn * delta) ; tens_a) * ((merge * idn) ; tens_a)) ; comp ;
eq merge_assoc : cp[O] ; (cp[O] * id[O]) ; (((merge * idn) ; tens_a) * merge) ; comp = cp[O] ; (cp[O] * id[O]) ; (((idn * merge) ; tens_a) * merge) ; comp ;
eq merge_comm : cp[O] ; ((cp[O] ; sigma) * merge) ; comp = merge ;
"""

CARTESIAN_CAT = CR_CAT + """\
# Discarding is natural.
eq eps_natural : cp[A] ; (id[A] * (cod ; eps)) ; comp = dom ; eps ;
"""

_ARRANGE = (
    "(id[O] * (cp[O] ; (cp[O] * id[O])) * cp[O] * id[A]) ; "
    "(id[O] * id[O] * id[O] * sw[O] * id[O] * id[A]) ; "
    "(id[O] * id[O] * sw[O] * id[O] * id[O] * id[A]) ; "
    "(id[O] * id[O] * id[O] * id[O] * id[O] * sw[O,A]) ; "
    "(id[O] * id[O] * id[O] * id[O] * sw[O,A] * id[O]) ; "
    "(id[O] * id[O] * id[O] * sw[O,A] * id[O] * id[O])"
)

CCC = CARTESIAN_CAT + """\
# Exponentials: exp(A, B) is the internal hom, ev(A, B) : exp(A, B) x A -> B,
# and lam(X, A, B, f) is defined exactly when f : X x A -> B.
op exp : O * O -> O ;
op ev : O * O -> A ;
op lam : O * O * O * A -> A ;
eq exp_total : exp ; dl[O] = dl[O] * dl[O] ;
eq ev_total : ev ; dl[A] = dl[O] * dl[O] ;
eq ev_dom : ev ; dom = (cp[O] * id[O]) ; (id[O] * sw[O]) ; (exp * id[O]) ; tens_o ;
eq ev_cod : ev ; cod = dl[O] * id[O] ;
eq lam_defined : lam ; dl[A] = (tens_o * id[O] * (cp[A] ; (dom * cod))) ; (id[O] * sw[O] * id[O]) ; (mu[O] * mu[O]) ; (dl[O] * dl[O]) ;
leq lam_dom : lam ; dom <= id[O] * dl[O] * dl[O] * dl[A] ;
leq lam_cod : lam ; cod <= dl[O] * exp * dl[A] ;
leq lam_beta : {arrange} ; (((lam * idn) ; tens_a) * ev) ; comp <= dl[O] * dl[O] * dl[O] * id[A] ;
leq lam_eta : {arrange} ; (id[O] * id[O] * id[O] * ((((id[A] * idn) ; tens_a) * ev) ; comp)) ; lam <= dl[O] * dl[O] * dl[O] * id[A] ;
""".format(arrange=_ARRANGE)

SOURCES = {
    "pcm": PCM,
    "total_cmon": TOTAL_CMON,
    "setoid": SETOID,
    "pca": PCA,
    "pairing": PAIRING,
    "category": CATEGORY,
    "strict_moncat": STRICT_MONCAT,
    "symm_moncat": SYMM_MONCAT,
    "cr_cat": CR_CAT,
    "dcr_cat": DCR_CAT,
    "cartesian_cat": CARTESIAN_CAT,
    "ccc": CCC,
}
