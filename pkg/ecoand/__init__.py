"""Eco-driving arrival planner for a signalized intersection."""
