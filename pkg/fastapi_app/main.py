from fastapi import FastAPI

from fastapi_app.api.ergm import router as ergm_router

app = FastAPI(
    title="ERGM Calibration Service",
    description="Network statistics, MPLE and short pseudo-posterior runs over HTTP. "
                "Try the endpoints from the interactive docs at /docs.",
)

app.include_router(ergm_router)
