# app.components package
