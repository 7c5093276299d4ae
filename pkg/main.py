#!/usr/bin/env python3
"""
Tree Spectra API

Exposes the toolkit pipelines over HTTP:
1. Secular polynomials and singular strata
2. Cohomological obstructions to uniform discreteness
3. Numeric spectra and mingap estimates
4. Background verification suites
"""

import os
import sys
import uuid
from typing import List, Optional

from fastapi import BackgroundTasks, FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel
import uvicorn
from loguru import logger

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), "src"))

from cohomology.lattice import make_lattice
from commands.runner import (
    cmd_mingap,
    cmd_obstruction,
    cmd_secular,
    cmd_spectrum,
    cmd_strata,
    cmd_verify,
)
from graph_model.graph_io import parse_graph_text
from graph_model.tree_graph import build_graph
from utils.config import Config, setup_logging
from utils.error_handler import TreeSpectraError

# Initialize FastAPI app
app = FastAPI(
    title="Tree Spectra API",
    description="Secular polynomials, singular strata, obstructions and spectra of metric trees",
    version="1.0.0"
)

# Setup logging
setup_logging("INFO")

# Store background task results
verification_results = {}


class GraphRequest(BaseModel):
    """A tree given either as graph text or as an edge list."""
    graph_text: Optional[str] = None
    edges: Optional[List[List[int]]] = None
    dirichlet: List[int] = []

    def to_graph(self):
        if self.graph_text is not None:
            return parse_graph_text(self.graph_text)
        if self.edges is None:
            raise TreeSpectraError("request needs graph_text or edges")
        return build_graph([tuple(e) for e in self.edges], self.dirichlet)


class StrataRequest(GraphRequest):
    m: Optional[int] = None


class ObstructionRequest(GraphRequest):
    relations: List[List[int]] = []
    symbolic: Optional[int] = None


class SpectrumRequest(GraphRequest):
    lengths: List[float]
    kmax: float
    format: str = "human"


class MingapRequest(GraphRequest):
    lengths: List[float]
    window: List[float]


class VerifyRequest(GraphRequest):
    seed: int
    samples: int = 100


def _run(command, request, **options):
    try:
        g = request.to_graph()
        return JSONResponse(status_code=200, content={"output": command(g, **options)})
    except TreeSpectraError as e:
        return JSONResponse(status_code=422, content={"error": f"{type(e).__name__}: {str(e)}"})
    except Exception as e:
        logger.exception("Unexpected error:")
        return JSONResponse(status_code=500, content={"error": str(e)})


@app.get("/")
async def root():
    """API root endpoint"""
    return {"message": "Welcome to the Tree Spectra API"}


@app.post("/secular")
def secular(request: GraphRequest):
    """Canonical secular polynomial"""
    return _run(cmd_secular, request)


@app.post("/strata")
def strata(request: StrataRequest):
    """Stratum report"""
    return _run(cmd_strata, request, m=request.m)


@app.post("/obstruction")
def obstruction(request: ObstructionRequest):
    """Intersection products and verdict"""
    if request.symbolic is not None:
        return _run(cmd_obstruction, request, symbolic=request.symbolic)
    try:
        n = request.to_graph().n
        rel = make_lattice(request.relations, n)
    except TreeSpectraError as e:
        return JSONResponse(status_code=422, content={"error": f"{type(e).__name__}: {str(e)}"})
    return _run(cmd_obstruction, request, relations=rel)


@app.post("/spectrum")
def spectrum(request: SpectrumRequest):
    """Spectrum up to kmax"""
    return _run(cmd_spectrum, request, lengths=request.lengths, kmax=request.kmax, output_format=request.format)


@app.post("/mingap")
def mingap(request: MingapRequest):
    """Mingap estimate over a window"""
    return _run(cmd_mingap, request, lengths=request.lengths, window=request.window)


@app.post("/verify")
async def verify(request: VerifyRequest, background_tasks: BackgroundTasks):
    """
    Start a verification suite in the background
    """
    task_id = uuid.uuid4().hex
    verification_results[task_id] = {"status": "processing", "task_id": task_id}
    background_tasks.add_task(process_verification, task_id=task_id, request=request)
    return JSONResponse(
        status_code=202,
        content={
            "message": "Verification accepted",
            "task_id": task_id,
            "status": "processing"
        }
    )


@app.get("/status/{task_id}")
async def check_status(task_id: str):
    """
    Check the status of a verification task
    """
    if task_id not in verification_results:
        return JSONResponse(
            status_code=404,
            content={"error": f"Task ID {task_id} not found"}
        )
    return JSONResponse(status_code=200, content=verification_results[task_id])


def process_verification(task_id: str, request: VerifyRequest):
    """
    Run the verification suite in the background

    Args:
        task_id (str): Task identifier
        request (VerifyRequest): Graph and suite parameters
    """
    try:
        logger.info(f"Starting verification for task {task_id}")
        output = cmd_verify(request.to_graph(), seed=request.seed, samples=request.samples)
        logger.success(f"Verification complete for task {task_id}")
        verification_results[task_id] = {
            "status": "completed",
            "task_id": task_id,
            "output": output
        }
    except Exception as e:
        logger.error(f"An error occurred: {str(e)}")
        verification_results[task_id] = {
            "status": "failed",
            "task_id": task_id,
            "error": str(e)
        }


if __name__ == "__main__":
    # Run the FastAPI app with uvicorn
    uvicorn.run("main:app", host=Config.API_HOST, port=Config.API_PORT, reload=True)
