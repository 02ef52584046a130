"""FastAPI wiring: one POST endpoint per command, plus /health.

Domain errors surface as HTTP 400 with {"error": {code, message, ...}};
definitive mathematical negatives are ordinary 200 responses whose payload
says so (the CLI maps those to exit code 1).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import IsojetError
from . import handlers

app = FastAPI(
    title="isojet",
    description="Exact jet-level contact equivalence of singularities: "
                "truncated rings, contact-group orbits, logarithmic and "
                "Hasse-Schmidt derivations, isosingular scans.",
    version="0.1.0",
)


@app.exception_handler(IsojetError)
async def isojet_error_handler(request: Request, exc: IsojetError):
    return JSONResponse(status_code=400, content={"error": exc.payload()})


@app.get("/health")
def health():
    return {"status": "ok"}


def _register(name, request_model, handler):
    async def endpoint(body):
        return handler(body)

    endpoint.__annotations__ = {"body": request_model}
    endpoint.__name__ = name.replace("-", "_")
    app.post(f"/{name}", name=name)(endpoint)


for _name, (_model, _handler) in handlers.COMMANDS.items():
    _register(_name, _model, _handler)
