from typing import Literal

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette import status

from condsplit.config import configure_logging
from condsplit.crep import Verdict, c_infer, induced_ocf, minimal_core_vector
from condsplit.errors import CondSplitError
from condsplit.kb import parse_conditional, parse_kb
from condsplit.operators import get_all_operators, get_operator
from condsplit.splitting import SplittingRecord, census, enumerate_splittings

configure_logging()

app = FastAPI(title="condsplit")

app.add_middleware(
    CORSMiddleware,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

ANSWERS = {Verdict.TRUE: "ACCEPT", Verdict.FALSE: "REJECT", Verdict.UNKNOWN: "UNKNOWN"}


class InferRequest(BaseModel):
    kb: str
    operator: str
    query: str
    bound: int | None = None


class InferResponse(BaseModel):
    operator: str
    query: str
    verdict: Literal["ACCEPT", "REJECT", "UNKNOWN"]


class SplittingsRequest(BaseModel):
    kb: str
    only: Literal["genuine", "safe", "gensafe"] | None = None


class SplittingsResponse(BaseModel):
    counts: dict[str, int]
    splittings: list[SplittingRecord]


class KbRequest(BaseModel):
    kb: str


class CoreResponse(BaseModel):
    impacts: list[int]
    ranks: list[int]


@app.exception_handler(CondSplitError)
async def library_error_handler(request: Request, exc: CondSplitError):
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.get("/operators")
async def list_operators():
    return {
        "operators": [
            {"name": name, "description": operator.description}
            for name, operator in get_all_operators().items()
        ]
    }


@app.post("/infer", response_model=InferResponse)
def infer(request: InferRequest):
    """
    Answer the query (B | A) for a knowledge base given as text.
    c-inference may answer UNKNOWN when its impact bound is below 2^|Δ|.
    """
    base = parse_kb(request.kb).base
    operator = get_operator(request.operator)
    conditional = parse_conditional(request.query, base.signature)
    if operator.name == "cinf":
        verdict = c_infer(
            base, conditional.antecedent, conditional.consequent, bound=request.bound
        ).verdict
    else:
        accepted = operator.query(base, conditional.antecedent, conditional.consequent)
        verdict = Verdict.TRUE if accepted else Verdict.FALSE
    return InferResponse(operator=operator.name, query=str(conditional), verdict=ANSWERS[verdict])


@app.post("/splittings", response_model=SplittingsResponse)
def splittings(request: SplittingsRequest):
    base = parse_kb(request.kb).base
    everything = enumerate_splittings(base, dedup=True)
    keep = {
        None: lambda s: True,
        "genuine": lambda s: bool(s.genuine),
        "safe": lambda s: bool(s.safe),
        "gensafe": lambda s: bool(s.generalized_safe),
    }[request.only]
    return SplittingsResponse(
        counts=census(everything),
        splittings=[s.to_record() for s in everything if keep(s)],
    )


@app.post("/crep/core", response_model=CoreResponse)
def crep_core(request: KbRequest):
    base = parse_kb(request.kb).base
    eta = minimal_core_vector(base)
    ranks = induced_ocf(base, eta).ranks
    return CoreResponse(impacts=list(eta.impacts), ranks=[int(r) for r in ranks])


@app.get("/health")
async def health_check():
    return {"status": "healthy", "service": "condsplit"}
