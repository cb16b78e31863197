"""Service layer: pydantic models and the FastAPI application."""
